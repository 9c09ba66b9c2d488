#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace sedlab {

// Radix-2 FFT for power-of-two sizes with cached twiddle/bit-reversal tables.
// Enough for STFT frames, fast convolution and test-side spectrum probes.
class FftPlan {
public:
    explicit FftPlan(size_t n);

    size_t size() const { return n_; }

    // in-place transform; data.size() must equal size()
    void forward(std::vector<std::complex<double>>& data) const;
    void inverse(std::vector<std::complex<double>>& data) const; // includes 1/n

private:
    void transform(std::vector<std::complex<double>>& data, bool inverse) const;

    size_t n_;
    std::vector<size_t> bitrev_;
    std::vector<std::complex<double>> twiddle_;     // forward
    std::vector<std::complex<double>> twiddle_inv_; // conjugates
};

// One-shot helpers.
std::vector<std::complex<double>> fft(std::vector<std::complex<double>> data);
std::vector<std::complex<double>> ifft(std::vector<std::complex<double>> data);

// Real-input FFT: returns n/2+1 spectrum bins. x.size() must be a power of two.
std::vector<std::complex<double>> rfft(const std::vector<double>& x);

// Linear convolution of x and h (length x+h-1), via FFT.
std::vector<double> fft_convolve(const std::vector<double>& x, const std::vector<double>& h);

inline size_t next_pow2(size_t n) {
    size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

} // namespace sedlab
