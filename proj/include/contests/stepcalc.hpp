#ifndef CONTESTS_STEPCALC_HPP
#define CONTESTS_STEPCALC_HPP

#include <cstddef>
#include <vector>

namespace contests {

// Absolute tolerance used when canonicalizing breakpoints and levels.
inline constexpr double kCanonicalEps = 1e-12;

// Non-increasing, non-negative piecewise-constant function on [0,1].
//
// Piece i covers [breaks[i-1], breaks[i]) with value values[i] (breaks[-1]
// taken as 0); the last break is exactly 1 and f(1) = values.back().
// Canonical form: no two adjacent pieces share a value, no empty pieces.
class StepFn {
 public:
  StepFn();  // all-zero function
  StepFn(std::vector<double> breaks, std::vector<double> values);

  static StepFn zero();
  static StepFn constant(double value);
  // height on [0, width), zero afterwards. width in (0, 1].
  static StepFn single_stair(double height, double width);

  double operator()(double h) const;  // eval under right-open semantics

  std::size_t pieces() const { return values_.size(); }
  double value(std::size_t i) const { return values_[i]; }
  double upper_break(std::size_t i) const { return breaks_[i]; }
  double lower_break(std::size_t i) const { return i == 0 ? 0.0 : breaks_[i - 1]; }
  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<double>& values() const { return values_; }

  bool is_zero() const;
  double max_value() const { return values_.front(); }
  double min_positive_value() const;  // 0 if the function is identically zero
  double support() const;             // sup{h : f(h) > 0}

 private:
  std::vector<double> breaks_;
  std::vector<double> values_;
};

// Non-decreasing piecewise-linear function on [0,1] anchored at (0,0).
class PLFn {
 public:
  struct Knot {
    double q;
    double y;
  };

  PLFn();  // identically zero
  explicit PLFn(std::vector<Knot> knots);

  static PLFn identity();  // H(q) = q

  double operator()(double q) const;
  const std::vector<Knot>& knots() const { return knots_; }
  double total() const { return knots_.back().y; }

 private:
  std::vector<Knot> knots_;
};

// Per-contestant average budget.
struct Budget {
  double t;
  explicit Budget(double value);
};

// sup{h in [0,1] : f(h) >= x}; 0 when x exceeds f(0).
double upper_inverse(const StepFn& f, double x);

// sup{h in [0,1] : f(h) > x}; 0 when the set is empty. This is f^{-1}(x+0).
double strict_upper_inverse(const StepFn& f, double x);

// Exact integral over [0,1].
double budget_of(const StepFn& f);

// Aggregate prize curve Q(x) = sum_j upper_inverse(fs[j], x), x > 0.
double q_curve(const std::vector<StepFn>& fs, double x);

// max{x > 0 : Q(x) >= q}, or 0 when no positive level qualifies. q in (0,1].
double q_inverse(const std::vector<StepFn>& fs, double q);

// Cumulative V(q) = integral of v over [0,q], exact piecewise-linear.
PLFn cum_value(const StepFn& v);

// min{q in [0,1] : V(q) >= target}; throws when target exceeds V(1).
double value_inverse(const StepFn& v, double target);
double value_inverse(const PLFn& cumulative, double target);

// Exact Riemann-Stieltjes integral of v against dH.
double stieltjes(const StepFn& v, const PLFn& h);

// Horizontal stretch: g with g(h) = f(h/c) + pad on [0, min(1,c)), pad beyond.
StepFn stretch(const StepFn& f, double c, double pad);

// Bundle of several contests: g(h) = max{x : sum_j fs[j]^{-1}(x) >= h}.
StepFn merge_opponents(const std::vector<StepFn>& fs);

// C-dominance f(Ch) >= g(h) on [0, min(1, 1/C)] for C in (0,1], decided
// through the generalized inverses so single points of measure zero are
// irrelevant. strict = true tests f(Ch) > g(h).
bool dominates(const StepFn& f, const StepFn& g, double c, bool strict = false);

// Distinct positive values of all fs, descending.
std::vector<double> positive_levels(const std::vector<StepFn>& fs);

}  // namespace contests

#endif  // CONTESTS_STEPCALC_HPP
