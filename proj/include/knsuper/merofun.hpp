#pragma once

// Rational functions of z over K whose finite poles sit at explicitly listed
// points, with residues at finite points and at infinity.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "knsuper/coeffield.hpp"

namespace knsuper {

using ZPoly = UPoly<Scalar>;

enum class PunctureMode { TwoPoint, ThreePoint };

// A = I u O on the Riemann sphere. TwoPoint: I = {0}; ThreePoint:
// I = {alpha, -alpha}; O = {infinity} in both cases. alpha = beta^2 where
// beta is either the formal generator of K or a nonzero rational.
class PunctureConfig {
 public:
  static PunctureConfig two_point();
  static PunctureConfig three_point();
  // Numeric specialization of beta; throws ConfigError for beta = 0.
  static PunctureConfig three_point(const Rational& beta);

  PunctureMode mode() const { return data_->mode; }
  const Scalar& beta() const { return data_->beta; }
  const Scalar& alpha() const { return data_->alpha; }
  const std::vector<Scalar>& in_points() const { return data_->in_points; }
  bool is_in_point(const Scalar& p) const;
  bool is_symbolic() const { return data_->symbolic; }
  std::string describe() const;

  friend bool operator==(const PunctureConfig& a, const PunctureConfig& b) {
    return a.data_ == b.data_ ||
           (a.data_->mode == b.data_->mode && a.data_->beta == b.data_->beta);
  }

 private:
  struct Data {
    PunctureMode mode;
    bool symbolic;
    Scalar beta, alpha;
    std::vector<Scalar> in_points;
  };
  explicit PunctureConfig(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  std::shared_ptr<const Data> data_;
};

struct Pole {
  Scalar point;
  int order;
};

// numerator(z) / prod (z - p)^order. Strict functions may only have poles at
// in-points of the configuration; oracle-mode functions may have poles at any
// point of K (used for z -> 1/z and for brute-force checks).
class MeroFun {
 public:
  enum class Mode { Strict, Oracle };

  explicit MeroFun(PunctureConfig cfg) : cfg_(std::move(cfg)) {}
  MeroFun(PunctureConfig cfg, ZPoly numerator, std::vector<Pole> poles = {},
          Mode mode = Mode::Strict);

  static MeroFun constant(const PunctureConfig& cfg, const Scalar& c);
  static MeroFun z(const PunctureConfig& cfg);
  static MeroFun monomial(const PunctureConfig& cfg, const Scalar& c, int k);
  // (z - point)^k for any integer k.
  static MeroFun linear_power(const PunctureConfig& cfg, const Scalar& point, int k,
                              Mode mode = Mode::Strict);
  // (z^2 - alpha^2)^k = (z - alpha)^k (z + alpha)^k, three-point only.
  static MeroFun quadric_power(const PunctureConfig& cfg, int k);

  const PunctureConfig& config() const { return cfg_; }
  const ZPoly& numerator() const { return num_; }
  const std::vector<Pole>& poles() const { return poles_; }
  Mode mode() const { return mode_; }
  bool is_zero() const { return num_.is_zero_poly(); }
  bool is_polynomial() const { return poles_.empty(); }
  int pole_order(const Scalar& p) const;
  int total_pole_order() const;
  // Order of growth at infinity: deg numerator - total pole order.
  int degree_at_infinity() const;
  MeroFun as_oracle() const;

  MeroFun operator-() const;
  friend MeroFun operator+(const MeroFun& f, const MeroFun& g);
  friend MeroFun operator-(const MeroFun& f, const MeroFun& g);
  friend MeroFun operator*(const MeroFun& f, const MeroFun& g);
  friend MeroFun operator*(const Scalar& c, const MeroFun& f);
  friend bool operator==(const MeroFun& f, const MeroFun& g);

  MeroFun derivative() const;
  MeroFun derivative(int times) const;
  // Integer powers; negative powers need a numerator that factors into
  // linear factors z - p over allowed points (times a constant).
  MeroFun pow(int e) const;
  // z |-> f(1/z), always oracle mode.
  MeroFun inversion() const;
  Scalar eval(const Scalar& at) const;

  std::string to_string() const;

 private:
  void reduce();
  void check_strict() const;

  PunctureConfig cfg_;
  ZPoly num_;
  std::vector<Pole> poles_;
  Mode mode_ = Mode::Strict;
};

enum class MeroOp { add, sub, mul };
MeroFun mf_arith(const MeroFun& f, const MeroFun& g, MeroOp op);
inline MeroFun mf_derivative(const MeroFun& f) { return f.derivative(); }

// Res_{z0} f by the order-p limit formula 1/(p-1)! D^{p-1}((z-z0)^p f)|_{z0},
// expanded with the Leibniz rule. Zero at holomorphic points.
Scalar residue_at(const MeroFun& f, const Scalar& z0);
// Res_inf f = -Res_0(f(1/z)/z^2).
Scalar residue_at_infinity(const MeroFun& f);
// (1/2 pi i) times the integral over a cycle separating I from O, i.e. the
// sum of residues at the in-points. Throws StrayPole for any other pole.
Scalar cycle_integral(const MeroFun& f, const PunctureConfig& cfg);
inline Scalar cycle_integral(const MeroFun& f) { return cycle_integral(f, f.config()); }

// n-th Taylor coefficients p^{(j)}(z0)/j! for j < count.
std::vector<Scalar> taylor_coefficients(const ZPoly& p, const Scalar& z0, std::size_t count);

}  // namespace knsuper
