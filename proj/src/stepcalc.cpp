#include "contests/stepcalc.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace contests {

namespace {

void require(bool cond, const char* message) {
  if (!cond) throw std::invalid_argument(message);
}

}  // namespace

StepFn::StepFn() : breaks_{1.0}, values_{0.0} {}

StepFn::StepFn(std::vector<double> breaks, std::vector<double> values) {
  require(!breaks.empty() && breaks.size() == values.size(),
          "StepFn: breaks and values must be non-empty and equally sized");
  for (double b : breaks)
    require(std::isfinite(b) && b > 0.0 && b <= 1.0 + kCanonicalEps,
            "StepFn: breaks must lie in (0,1]");
  require(std::abs(breaks.back() - 1.0) <= kCanonicalEps,
          "StepFn: last break must be 1");
  breaks.back() = 1.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    require(std::isfinite(values[i]) && values[i] >= -kCanonicalEps,
            "StepFn: values must be non-negative");
    values[i] = std::max(values[i], 0.0);
    if (i > 0) {
      require(breaks[i] > breaks[i - 1] - kCanonicalEps,
              "StepFn: breaks must be ascending");
      require(values[i] <= values[i - 1] + kCanonicalEps,
              "StepFn: values must be non-increasing");
      values[i] = std::min(values[i], values[i - 1]);
    }
  }
  // Canonicalize: drop empty pieces, merge adjacent pieces of equal value.
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    double lo = breaks_.empty() ? 0.0 : breaks_.back();
    if (breaks[i] <= lo) continue;  // empty piece
    if (!values_.empty() && std::abs(values[i] - values_.back()) <= kCanonicalEps) {
      breaks_.back() = breaks[i];
      continue;
    }
    breaks_.push_back(breaks[i]);
    values_.push_back(values[i]);
  }
  breaks_.back() = 1.0;
}

StepFn StepFn::zero() { return StepFn(); }

StepFn StepFn::constant(double value) { return StepFn({1.0}, {value}); }

StepFn StepFn::single_stair(double height, double width) {
  require(width > 0.0 && width <= 1.0, "single_stair: width must be in (0,1]");
  require(height >= 0.0, "single_stair: height must be non-negative");
  if (width >= 1.0) return constant(height);
  return StepFn({width, 1.0}, {height, 0.0});
}

double StepFn::operator()(double h) const {
  if (!(h >= 0.0 && h <= 1.0)) throw std::domain_error("StepFn: h outside [0,1]");
  if (h == 1.0) return values_.back();
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), h);
  return values_[static_cast<std::size_t>(it - breaks_.begin())];
}

bool StepFn::is_zero() const { return values_.size() == 1 && values_[0] == 0.0; }

double StepFn::min_positive_value() const {
  for (std::size_t i = values_.size(); i-- > 0;)
    if (values_[i] > 0.0) return values_[i];
  return 0.0;
}

double StepFn::support() const { return strict_upper_inverse(*this, 0.0); }

PLFn::PLFn() : knots_{{0.0, 0.0}, {1.0, 0.0}} {}

PLFn::PLFn(std::vector<Knot> knots) {
  require(knots.size() >= 2, "PLFn: need at least two knots");
  require(std::abs(knots.front().q) <= kCanonicalEps && std::abs(knots.front().y) <= kCanonicalEps,
          "PLFn: first knot must be (0,0)");
  require(std::abs(knots.back().q - 1.0) <= kCanonicalEps, "PLFn: last knot must have q = 1");
  knots.front() = {0.0, 0.0};
  knots.back().q = 1.0;
  for (std::size_t i = 1; i < knots.size(); ++i) {
    require(std::isfinite(knots[i].q) && std::isfinite(knots[i].y),
            "PLFn: knots must be finite");
    require(knots[i].q >= knots[i - 1].q - kCanonicalEps, "PLFn: knot q's must ascend");
    require(knots[i].y >= knots[i - 1].y - kCanonicalEps, "PLFn: y must be non-decreasing");
  }
  for (const Knot& k : knots) {
    if (!knots_.empty()) {
      double dq = k.q - knots_.back().q;
      double dy = std::max(k.y, knots_.back().y) - knots_.back().y;
      if (dq <= kCanonicalEps) {
        require(dy <= kCanonicalEps, "PLFn: vertical jump");
        continue;
      }
      // Drop the previous knot when it is collinear with its neighbours.
      if (knots_.size() >= 2) {
        const Knot& a = knots_[knots_.size() - 2];
        const Knot& b = knots_.back();
        double chord = a.y + (b.q - a.q) * (k.y - a.y) / (k.q - a.q);
        if (std::abs(chord - b.y) <= 1e-15 * std::max(1.0, std::abs(b.y))) knots_.pop_back();
      }
      knots_.push_back({k.q, std::max(k.y, knots_.back().y)});
      continue;
    }
    knots_.push_back(k);
  }
  if (knots_.size() == 1) knots_.push_back({1.0, knots_[0].y});
  knots_.back().q = 1.0;
}

PLFn PLFn::identity() { return PLFn({{0.0, 0.0}, {1.0, 1.0}}); }

double PLFn::operator()(double q) const {
  if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("PLFn: q outside [0,1]");
  auto cmp = [](const Knot& k, double x) { return k.q < x; };
  auto it = std::lower_bound(knots_.begin(), knots_.end(), q, cmp);
  if (it == knots_.begin()) return knots_.front().y;
  if (it == knots_.end()) return knots_.back().y;
  const Knot& b = *it;
  if (b.q == q) return b.y;
  const Knot& a = *(it - 1);
  return a.y + (q - a.q) * (b.y - a.y) / (b.q - a.q);
}

Budget::Budget(double value) : t(value) {
  if (!(std::isfinite(value) && value >= 0.0))
    throw std::invalid_argument("Budget: must be finite and non-negative");
}

double upper_inverse(const StepFn& f, double x) {
  if (!(x >= 0.0)) throw std::domain_error("upper_inverse: level must be >= 0");
  const auto& values = f.values();
  // Last index with values[i] >= x; values are non-increasing.
  auto it = std::partition_point(values.begin(), values.end(),
                                 [x](double v) { return v >= x; });
  if (it == values.begin()) return 0.0;
  return f.upper_break(static_cast<std::size_t>(it - values.begin()) - 1);
}

double strict_upper_inverse(const StepFn& f, double x) {
  if (!(x >= 0.0)) throw std::domain_error("strict_upper_inverse: level must be >= 0");
  const auto& values = f.values();
  auto it = std::partition_point(values.begin(), values.end(),
                                 [x](double v) { return v > x; });
  if (it == values.begin()) return 0.0;
  return f.upper_break(static_cast<std::size_t>(it - values.begin()) - 1);
}

double budget_of(const StepFn& f) {
  double sum = 0.0;
  for (std::size_t i = 0; i < f.pieces(); ++i)
    sum += f.value(i) * (f.upper_break(i) - f.lower_break(i));
  return sum;
}

double q_curve(const std::vector<StepFn>& fs, double x) {
  if (!(x > 0.0)) throw std::domain_error("q_curve: level must be positive");
  double sum = 0.0;
  for (const StepFn& f : fs) sum += upper_inverse(f, x);
  return sum;
}

std::vector<double> positive_levels(const std::vector<StepFn>& fs) {
  std::set<double> levels;
  for (const StepFn& f : fs)
    for (double v : f.values())
      if (v > 0.0) levels.insert(v);
  return {levels.rbegin(), levels.rend()};
}

double q_inverse(const std::vector<StepFn>& fs, double q) {
  if (!(q > 0.0 && q <= 1.0)) throw std::domain_error("q_inverse: q outside (0,1]");
  for (double level : positive_levels(fs))
    if (q_curve(fs, level) >= q) return level;
  return 0.0;
}

PLFn cum_value(const StepFn& v) {
  std::vector<PLFn::Knot> knots;
  knots.push_back({0.0, 0.0});
  double acc = 0.0;
  for (std::size_t i = 0; i < v.pieces(); ++i) {
    acc += v.value(i) * (v.upper_break(i) - v.lower_break(i));
    knots.push_back({v.upper_break(i), acc});
  }
  return PLFn(std::move(knots));
}

double value_inverse(const PLFn& cumulative, double target) {
  double total = cumulative.total();
  if (target > total + kCanonicalEps * std::max(1.0, total))
    throw std::domain_error("value_inverse: target exceeds total mass");
  if (target <= 0.0) return 0.0;
  target = std::min(target, total);
  const auto& knots = cumulative.knots();
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (knots[i].y >= target) {
      double dy = knots[i].y - knots[i - 1].y;
      if (dy <= 0.0) return knots[i - 1].q;
      double frac = (target - knots[i - 1].y) / dy;
      return knots[i - 1].q + frac * (knots[i].q - knots[i - 1].q);
    }
  }
  return 1.0;
}

double value_inverse(const StepFn& v, double target) {
  return value_inverse(cum_value(v), target);
}

double stieltjes(const StepFn& v, const PLFn& h) {
  PLFn cumulative = cum_value(v);
  const auto& knots = h.knots();
  double sum = 0.0;
  for (std::size_t i = 1; i < knots.size(); ++i) {
    double dq = knots[i].q - knots[i - 1].q;
    if (dq <= 0.0) continue;
    double slope = (knots[i].y - knots[i - 1].y) / dq;
    if (slope == 0.0) continue;
    sum += slope * (cumulative(knots[i].q) - cumulative(knots[i - 1].q));
  }
  return sum;
}

StepFn stretch(const StepFn& f, double c, double pad) {
  if (!(c > 0.0)) throw std::invalid_argument("stretch: factor must be positive");
  if (!(pad >= 0.0)) throw std::invalid_argument("stretch: pad must be non-negative");
  std::vector<double> breaks;
  std::vector<double> values;
  for (std::size_t i = 0; i < f.pieces(); ++i) {
    double b = c * f.upper_break(i);
    values.push_back(f.value(i) + pad);
    if (b >= 1.0) {
      breaks.push_back(1.0);
      return StepFn(std::move(breaks), std::move(values));
    }
    breaks.push_back(b);
  }
  breaks.push_back(1.0);
  values.push_back(pad);
  return StepFn(std::move(breaks), std::move(values));
}

StepFn merge_opponents(const std::vector<StepFn>& fs) {
  if (fs.empty()) throw std::invalid_argument("merge_opponents: need at least one function");
  std::vector<double> levels = positive_levels(fs);
  std::vector<double> breaks;
  std::vector<double> values;
  for (double level : levels) {
    double width = 0.0;
    for (const StepFn& f : fs) width += upper_inverse(f, level);
    width = std::min(width, 1.0);
    double lo = breaks.empty() ? 0.0 : breaks.back();
    if (width <= lo) continue;
    breaks.push_back(width);
    values.push_back(level);
    if (width >= 1.0) return StepFn(std::move(breaks), std::move(values));
  }
  breaks.push_back(1.0);
  values.push_back(0.0);
  return StepFn(std::move(breaks), std::move(values));
}

bool dominates(const StepFn& f, const StepFn& g, double c, bool strict) {
  if (!(c > 0.0 && c <= 1.0)) throw std::invalid_argument("dominates: C must be in (0,1]");
  std::vector<double> levels = positive_levels({f, g});
  if (strict) {
    // Level 0 covers the requirement f(Ch) > 0 wherever g vanishes.
    if (c * upper_inverse(g, 0.0) > strict_upper_inverse(f, 0.0)) return false;
    for (double x : levels)
      if (c * upper_inverse(g, x) > strict_upper_inverse(f, x)) return false;
    return true;
  }
  for (double x : levels)
    if (c * upper_inverse(g, x) > upper_inverse(f, x)) return false;
  return true;
}

}  // namespace contests
