#include "amo/fourier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace amo {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

std::complex<double> FourierSeries::evaluate(double omega) const {
    // walk k = -K..K with an incrementally rotated phase
    std::complex<double> w(std::cos(kTwoPi * omega), std::sin(kTwoPi * omega));
    std::complex<double> phase(std::cos(kTwoPi * omega * K_), -std::sin(kTwoPi * omega * K_));
    std::complex<double> sum(0.0, 0.0);
    for (int k = -K_; k <= K_; ++k) {
        sum += c_[static_cast<std::size_t>(k + K_)] * phase;
        phase *= w;
    }
    return sum;
}

double FourierSeries::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& z : c_) m = std::max(m, std::abs(z));
    return m;
}

bool FourierSeries::is_real_valued(double tol) const {
    double scale = std::max(1.0, max_abs_coeff());
    for (int k = 0; k <= K_; ++k)
        if (std::abs(coeff(-k) - std::conj(coeff(k))) > tol * scale) return false;
    return true;
}

double FourierSeries::fitted_decay_rate() const {
    double cmax = max_abs_coeff();
    if (cmax == 0.0) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long long n = 0;
    for (int k = -K_; k <= K_; ++k) {
        double a = std::abs(coeff(k));
        if (a < 1e-14 * cmax || k == 0) continue;
        double x = std::fabs(static_cast<double>(k));
        double y = std::log(a);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) return 0.0;
    double denom = n * sxx - sx * sx;
    if (denom == 0.0) return 0.0;
    return -(n * sxy - sx * sy) / denom;
}

FourierSeries FourierSeries::truncated(double rel_tol) const {
    double cmax = max_abs_coeff();
    int K = 0;
    for (int k = 0; k <= K_; ++k)
        if (std::abs(coeff(k)) > rel_tol * cmax || std::abs(coeff(-k)) > rel_tol * cmax) K = k;
    FourierSeries out(K);
    for (int k = -K; k <= K; ++k) out.set_coeff(k, coeff(k));
    return out;
}

FourierSeries fourier_from_samples(std::span<const std::complex<double>> samples) {
    const std::size_t n = samples.size();
    if (n == 0 || n % 2 == 0)
        throw std::invalid_argument("fourier_from_samples: need an odd sample count 2K+1");
    const int K = static_cast<int>((n - 1) / 2);
    FourierSeries out(K);
    for (int k = -K; k <= K; ++k) {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            double ang = -kTwoPi * static_cast<double>(k) * static_cast<double>(j) /
                         static_cast<double>(n);
            acc += samples[j] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out.set_coeff(k, acc / static_cast<double>(n));
    }
    return out;
}

FourierSeries fourier_from_function(const std::function<std::complex<double>(double)>& g, int K) {
    const std::size_t n = 2 * static_cast<std::size_t>(K) + 1;
    std::vector<std::complex<double>> samples(n);
    for (std::size_t j = 0; j < n; ++j)
        samples[j] = g(static_cast<double>(j) / static_cast<double>(n));
    return fourier_from_samples(samples);
}

}  // namespace amo
