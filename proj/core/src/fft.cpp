#include "sedlab/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace sedlab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

bool is_pow2(size_t n) { return n != 0 && (n & (n - 1)) == 0; }
} // namespace

FftPlan::FftPlan(size_t n) : n_(n) {
    if (!is_pow2(n)) throw std::invalid_argument("FftPlan: size must be a power of two");
    bitrev_.resize(n);
    size_t log2n = 0;
    while ((size_t{1} << log2n) < n) ++log2n;
    for (size_t i = 0; i < n; ++i) {
        size_t r = 0;
        for (size_t b = 0; b < log2n; ++b)
            if (i & (size_t{1} << b)) r |= size_t{1} << (log2n - 1 - b);
        bitrev_[i] = r;
    }
    twiddle_.resize(n / 2);
    twiddle_inv_.resize(n / 2);
    for (size_t k = 0; k < n / 2; ++k) {
        const double ang = -kTwoPi * static_cast<double>(k) / static_cast<double>(n);
        twiddle_[k] = {std::cos(ang), std::sin(ang)};
        twiddle_inv_[k] = std::conj(twiddle_[k]);
    }
}

void FftPlan::transform(std::vector<std::complex<double>>& a, bool inverse) const {
    if (a.size() != n_) throw std::invalid_argument("FftPlan: data size mismatch");
    for (size_t i = 0; i < n_; ++i) {
        const size_t j = bitrev_[i];
        if (i < j) std::swap(a[i], a[j]);
    }
    const auto& tw = inverse ? twiddle_inv_ : twiddle_;
    for (size_t len = 2; len <= n_; len <<= 1) {
        const size_t half = len >> 1;
        const size_t stride = n_ / len;
        for (size_t start = 0; start < n_; start += len) {
            for (size_t k = 0; k < half; ++k) {
                const std::complex<double> w = tw[k * stride];
                std::complex<double>& u = a[start + k];
                std::complex<double>& v = a[start + k + half];
                const std::complex<double> t = v * w;
                v = u - t;
                u += t;
            }
        }
    }
    if (inverse) {
        const double inv_n = 1.0 / static_cast<double>(n_);
        for (auto& c : a) c *= inv_n;
    }
}

void FftPlan::forward(std::vector<std::complex<double>>& data) const { transform(data, false); }
void FftPlan::inverse(std::vector<std::complex<double>>& data) const { transform(data, true); }

std::vector<std::complex<double>> fft(std::vector<std::complex<double>> data) {
    FftPlan plan(data.size());
    plan.forward(data);
    return data;
}

std::vector<std::complex<double>> ifft(std::vector<std::complex<double>> data) {
    FftPlan plan(data.size());
    plan.inverse(data);
    return data;
}

std::vector<std::complex<double>> rfft(const std::vector<double>& x) {
    const size_t n = x.size();
    if (!is_pow2(n)) throw std::invalid_argument("rfft: size must be a power of two");
    std::vector<std::complex<double>> buf(n);
    for (size_t i = 0; i < n; ++i) buf[i] = {x[i], 0.0};
    FftPlan plan(n);
    plan.forward(buf);
    buf.resize(n / 2 + 1);
    return buf;
}

std::vector<double> fft_convolve(const std::vector<double>& x, const std::vector<double>& h) {
    if (x.empty() || h.empty()) throw std::invalid_argument("fft_convolve: empty input");
    const size_t out_len = x.size() + h.size() - 1;
    const size_t n = next_pow2(out_len);
    std::vector<std::complex<double>> a(n), b(n);
    for (size_t i = 0; i < x.size(); ++i) a[i] = {x[i], 0.0};
    for (size_t i = 0; i < h.size(); ++i) b[i] = {h[i], 0.0};
    FftPlan plan(n);
    plan.forward(a);
    plan.forward(b);
    for (size_t i = 0; i < n; ++i) a[i] *= b[i];
    plan.inverse(a);
    std::vector<double> out(out_len);
    for (size_t i = 0; i < out_len; ++i) out[i] = a[i].real();
    return out;
}

} // namespace sedlab
