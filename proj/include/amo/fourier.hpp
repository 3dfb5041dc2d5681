#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace amo {

/// Trigonometric polynomial sum_{|k| <= K} c_k e^{2 pi i k omega}.
class FourierSeries {
  public:
    FourierSeries() = default;
    explicit FourierSeries(int K) : K_(K), c_(2 * static_cast<std::size_t>(K) + 1) {}

    int degree() const { return K_; }
    std::complex<double> coeff(int k) const {
        if (k < -K_ || k > K_) return {0.0, 0.0};
        return c_[static_cast<std::size_t>(k + K_)];
    }
    void set_coeff(int k, std::complex<double> v) { c_[static_cast<std::size_t>(k + K_)] = v; }

    std::complex<double> evaluate(double omega) const;
    double evaluate_real(double omega) const { return evaluate(omega).real(); }

    double max_abs_coeff() const;
    /// c_{-k} == conj(c_k) within tol.
    bool is_real_valued(double tol = 1e-10) const;
    /// Least-squares exponential rate of |c_k| over the coefficients above
    /// 1e-14 of the maximum; positive means decay.
    double fitted_decay_rate() const;
    double strip_estimate() const { return fitted_decay_rate() / (2.0 * 3.14159265358979323846); }

    /// Truncate to the smallest K' with all dropped |c_k| below
    /// rel_tol * max |c_k|.
    FourierSeries truncated(double rel_tol = 1e-12) const;

  private:
    int K_ = 0;
    std::vector<std::complex<double>> c_ = {std::complex<double>(0.0, 0.0)};
};

/// Exact trigonometric interpolation through 2K+1 equispaced samples
/// g(j / (2K+1)); inverse evaluation reproduces the samples to roundoff.
FourierSeries fourier_from_samples(std::span<const std::complex<double>> samples);
FourierSeries fourier_from_function(const std::function<std::complex<double>(double)>& g, int K);

}  // namespace amo
