#include "gvar/functions.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "gvar/numeric.hpp"

namespace gvar {

namespace {

double mod1(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r = 0.0;
  return r;
}

}  // namespace

Interval Interval::real(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw FunctionError("interval endpoints must be finite");
  if (!(b > a) || b - a > 1.0 + 1e-12) throw FunctionError("interval needs a < b <= a + 1");
  return {Point::real(a), Point::real(b)};
}

Interval Interval::dyadic(DyadicRational a, DyadicRational b) {
  const DyadicRational len = b - a;
  if (!(len > DyadicRational{}) || len > DyadicRational::integer(1)) {
    throw FunctionError("interval needs a < b <= a + 1");
  }
  return {Point::dyadic(a), Point::dyadic(b)};
}

CyclicPartition::CyclicPartition(std::vector<double> points) : points_(std::move(points)) {
  if (points_.empty()) throw FunctionError("cyclic partition needs at least one point");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!(points_[i] >= 0.0 && points_[i] < 1.0)) throw FunctionError("partition points must lie in [0, 1)");
    if (i > 0 && !(points_[i] > points_[i - 1])) throw FunctionError("partition points must be strictly increasing");
  }
}

std::vector<Interval> CyclicPartition::intervals() const {
  std::vector<Interval> out;
  out.reserve(points_.size());
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) out.push_back(Interval::real(points_[i], points_[i + 1]));
  out.push_back(Interval::real(points_.back(), points_.front() + 1.0));
  return out;
}

double CyclicPartition::min_gap() const {
  double gap = points_.front() + 1.0 - points_.back();
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) gap = std::min(gap, points_[i + 1] - points_[i]);
  return gap;
}

// ---------------------------------------------------------------------------

PiecewiseLinearPeriodic::PiecewiseLinearPeriodic(std::vector<DyadicRational> breakpoints, std::vector<double> values)
    : bp_(std::move(breakpoints)), vals_(std::move(values)) {
  if (bp_.empty()) throw FunctionError("piecewise-linear function needs at least one breakpoint");
  if (bp_.size() != vals_.size()) throw FunctionError("breakpoint and value counts differ");
  for (std::size_t i = 0; i < bp_.size(); ++i) {
    if (bp_[i] < DyadicRational{} || bp_[i] >= DyadicRational::integer(1)) {
      throw FunctionError("breakpoint " + bp_[i].to_string() + " outside [0, 1)");
    }
    if (i > 0 && !(bp_[i] > bp_[i - 1])) throw FunctionError("breakpoints must be strictly increasing");
    if (!std::isfinite(vals_[i])) throw FunctionError("breakpoint values must be finite");
  }
  bpd_.reserve(bp_.size());
  for (const auto& b : bp_) bpd_.push_back(b.to_double());
}

PiecewiseLinearPeriodic PiecewiseLinearPeriodic::constant(double c) { return {{DyadicRational{}}, {c}}; }

PiecewiseLinearPeriodic PiecewiseLinearPeriodic::triangle() { return {{DyadicRational{}, DyadicRational{1, 1}}, {0.0, 1.0}}; }

double PiecewiseLinearPeriodic::interpolate(std::size_t seg, double frac) const {
  const double v0 = vals_[seg];
  const double v1 = vals_[(seg + 1) % vals_.size()];
  if (frac <= 0.0) return v0;
  if (frac >= 1.0) return v1;
  return v0 + (v1 - v0) * frac;
}

double PiecewiseLinearPeriodic::eval(double x) const {
  if (bp_.size() == 1) return vals_[0];
  double r = mod1(x);
  auto it = std::upper_bound(bpd_.begin(), bpd_.end(), r);
  std::size_t seg;
  if (it == bpd_.begin()) {
    seg = bp_.size() - 1;
    r += 1.0;
  } else {
    seg = static_cast<std::size_t>(it - bpd_.begin()) - 1;
  }
  const double start = bpd_[seg];
  const double end = seg + 1 < bpd_.size() ? bpd_[seg + 1] : bpd_[0] + 1.0;
  return interpolate(seg, (r - start) / (end - start));
}

double PiecewiseLinearPeriodic::eval(const DyadicRational& x) const {
  if (bp_.size() == 1) return vals_[0];
  DyadicRational r = x.mod1();
  auto it = std::upper_bound(bp_.begin(), bp_.end(), r);
  std::size_t seg;
  if (it == bp_.begin()) {
    seg = bp_.size() - 1;
    r = r + DyadicRational::integer(1);
  } else {
    seg = static_cast<std::size_t>(it - bp_.begin()) - 1;
  }
  const DyadicRational start = bp_[seg];
  const DyadicRational end = seg + 1 < bp_.size() ? bp_[seg + 1] : bp_[0] + DyadicRational::integer(1);
  if (r == start) return vals_[seg];
  return interpolate(seg, (r - start).to_double() / (end - start).to_double());
}

// ---------------------------------------------------------------------------

DyadicComb::DyadicComb(int s, std::uint64_t j_lo, std::uint64_t j_hi, double h)
    : s_(s), j_lo_(j_lo), j_hi_(j_hi), h_(h) {
  if (s < 1 || s > DyadicRational::kMaxExp) throw FunctionError("comb scale must be in [1, 62]");
  if (!(j_lo < j_hi) || j_hi > (std::uint64_t{1} << (s - 1))) {
    throw FunctionError("comb needs 0 <= j_lo < j_hi <= 2^(s-1)");
  }
  if (!std::isfinite(h)) throw FunctionError("comb amplitude must be finite");
}

double DyadicComb::tooth(std::uint64_t j, double height_frac) const {
  j &= (std::uint64_t{1} << (s_ - 1)) - 1;
  if (j < j_lo_ || j >= j_hi_) return 0.0;
  return h_ * height_frac;
}

double DyadicComb::eval(double x) const {
  const double y = std::ldexp(mod1(x), s_);  // exact scaling
  const double q = std::floor(y / 2.0);
  const double rr = y - 2.0 * q;  // in [0, 2)
  if (rr >= 1.0) return tooth(static_cast<std::uint64_t>(q) + 1, rr - 1.0);
  return tooth(static_cast<std::uint64_t>(q), 1.0 - rr);
}

double DyadicComb::eval(const DyadicRational& x) const {
  const DyadicRational r = x.mod1();
  const auto num = static_cast<unsigned __int128>(r.num());
  const int d = r.exp() - s_;
  if (d <= 0) {
    // 2^s x is an integer: a peak (even) or a foot (odd).
    const auto y = static_cast<std::uint64_t>(num << -d);
    if (y % 2 == 0) return tooth(y / 2, 1.0);
    return 0.0;
  }
  const std::uint64_t q = static_cast<std::uint64_t>(num >> (d + 1));
  const unsigned __int128 rr = num - (static_cast<unsigned __int128>(q) << (d + 1));
  const unsigned __int128 one = static_cast<unsigned __int128>(1) << d;
  if (rr >= one) return tooth(q + 1, std::ldexp(static_cast<double>(rr - one), -d));
  return tooth(q, std::ldexp(static_cast<double>(one - rr), -d));
}

namespace {

std::map<DyadicRational, double> comb_points(const DyadicComb& c) {
  std::map<DyadicRational, double> pts;
  for (std::uint64_t j = c.j_lo(); j < c.j_hi(); ++j) {
    const auto twoj = static_cast<std::int64_t>(2 * j);
    pts[DyadicRational(twoj - 1, c.s()).mod1()] = 0.0;
    pts[DyadicRational(twoj, c.s()).mod1()] = c.h();
    pts[DyadicRational(twoj + 1, c.s()).mod1()] = 0.0;
  }
  return pts;
}

}  // namespace

PiecewiseLinearPeriodic DyadicComb::to_piecewise_linear(std::uint64_t max_teeth) const {
  if (teeth() > max_teeth) {
    throw FunctionError("comb with " + std::to_string(teeth()) + " teeth is too large to materialize");
  }
  std::vector<DyadicRational> bp;
  std::vector<double> vals;
  for (const auto& [x, v] : comb_points(*this)) {
    bp.push_back(x);
    vals.push_back(v);
  }
  return {std::move(bp), std::move(vals)};
}

// ---------------------------------------------------------------------------

double Function1D::eval(double x) const {
  return std::visit([x](const auto& f) { return f.eval(x); }, impl_);
}

double Function1D::eval(const DyadicRational& x) const {
  return std::visit([&x](const auto& f) { return f.eval(x); }, impl_);
}

double Function1D::eval(const Point& p) const { return p.exact ? eval(*p.exact) : eval(p.x); }

double Function1D::increment(const Interval& i) const {
  if (i.exact()) return eval(*i.b.exact) - eval(*i.a.exact);
  return eval(i.b.x) - eval(i.a.x);
}

double Function1D::sup_norm() const {
  if (const auto* c = comb()) return std::abs(c->h());
  double m = 0.0;
  for (double v : piecewise()->values()) m = std::max(m, std::abs(v));
  return m;
}

SwingSummary Function1D::swings() const {
  SwingSummary out;
  if (const auto* c = comb()) {
    if (c->h() == 0.0) return out;
    out.count = 2 * c->teeth();
    out.uniform_height = std::abs(c->h());
    if (out.count <= 8192) out.heights.assign(out.count, std::abs(c->h()));
    return out;
  }
  // Distinct consecutive values around the cycle, then cyclic turning points.
  std::vector<double> v;
  for (double x : piecewise()->values()) {
    if (v.empty() || x != v.back()) v.push_back(x);
  }
  while (v.size() > 1 && v.front() == v.back()) v.pop_back();
  if (v.size() < 2) return out;
  const std::size_t n = v.size();
  std::vector<double> ext;
  for (std::size_t i = 0; i < n; ++i) {
    const double prev = v[(i + n - 1) % n];
    const double next = v[(i + 1) % n];
    if ((v[i] > prev && v[i] > next) || (v[i] < prev && v[i] < next)) ext.push_back(v[i]);
  }
  for (std::size_t i = 0; i < ext.size(); ++i) out.heights.push_back(std::abs(ext[(i + 1) % ext.size()] - ext[i]));
  std::sort(out.heights.begin(), out.heights.end(), std::greater<>());
  out.count = out.heights.size();
  return out;
}

std::optional<std::vector<DyadicRational>> Function1D::breakpoints(std::size_t limit) const {
  if (const auto* p = piecewise()) {
    if (p->breakpoints().size() > limit) return std::nullopt;
    return p->breakpoints();
  }
  const auto* c = comb();
  if (c->teeth() > limit / 3 + 1) return std::nullopt;
  std::vector<DyadicRational> out;
  for (const auto& [x, v] : comb_points(*c)) out.push_back(x);
  if (out.size() > limit) return std::nullopt;
  return out;
}

Function1D Function1D::scaled(double c) const {
  if (const auto* k = comb()) return DyadicComb(k->s(), k->j_lo(), k->j_hi(), k->h() * c);
  const auto* p = piecewise();
  std::vector<double> vals = p->values();
  for (double& v : vals) v *= c;
  return PiecewiseLinearPeriodic(p->breakpoints(), std::move(vals));
}

PiecewiseLinearPeriodic Function1D::to_piecewise_linear(std::uint64_t max_teeth) const {
  if (const auto* k = comb()) return k->to_piecewise_linear(max_teeth);
  return *piecewise();
}

// ---------------------------------------------------------------------------

double TensorSum2D::eval(double x, double y) const {
  CompensatedSum s;
  for (const auto& t : terms_) s.add(t.u.eval(x) * t.v.eval(y));
  return s.value();
}

TensorSum2D TensorSum2D::transposed() const {
  std::vector<TensorTerm> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({t.v, t.u});
  return TensorSum2D(std::move(out));
}

TensorSum2D TensorSum2D::scaled(double c) const {
  std::vector<TensorTerm> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({t.u.scaled(c), t.v});
  return TensorSum2D(std::move(out));
}

double increment_x(const TensorSum2D& f, const Interval& i, double y) {
  CompensatedSum s;
  for (const auto& t : f.terms()) s.add(t.u.increment(i) * t.v.eval(y));
  return s.value();
}

double increment_y(const TensorSum2D& f, double x, const Interval& j) {
  CompensatedSum s;
  for (const auto& t : f.terms()) s.add(t.u.eval(x) * t.v.increment(j));
  return s.value();
}

double rect_increment(const TensorSum2D& f, const Rectangle& r) {
  CompensatedSum s;
  for (const auto& t : f.terms()) s.add(t.u.increment(r.x) * t.v.increment(r.y));
  return s.value();
}

}  // namespace gvar
