#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace muwave::detail {
namespace {

struct PlanPair {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
};

class PlanCache {
public:
    ~PlanCache()
    {
        for (auto& [n, p] : plans_) {
            fftw_destroy_plan(p.r2c);
            fftw_destroy_plan(p.c2r);
        }
    }

    const PlanPair& get(int n)
    {
        std::lock_guard lock(mutex_);
        auto it = plans_.find(n);
        if (it != plans_.end())
            return it->second;

        // Planner scratch only; FFTW_ESTIMATE never touches the arrays.
        std::vector<double> real(static_cast<std::size_t>(n));
        std::vector<std::complex<double>> spec(static_cast<std::size_t>(n / 2 + 1));
        auto* cplx = reinterpret_cast<fftw_complex*>(spec.data());
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        PlanPair p;
        p.r2c = fftw_plan_dft_r2c_1d(n, real.data(), cplx, flags);
        p.c2r = fftw_plan_dft_c2r_1d(n, cplx, real.data(), flags);
        return plans_.emplace(n, p).first->second;
    }

private:
    std::mutex mutex_;
    std::map<int, PlanPair> plans_;
};

PlanCache& cache()
{
    static PlanCache c;
    return c;
}

}  // namespace

void forward_real(std::span<const double> in, std::span<std::complex<double>> out)
{
    const int n = static_cast<int>(in.size());
    const auto& plans = cache().get(n);
    // r2c preserves its input for 1-D transforms, but the API takes a
    // non-const pointer.
    fftw_execute_dft_r2c(plans.r2c, const_cast<double*>(in.data()),
                         reinterpret_cast<fftw_complex*>(out.data()));
    const double scale = 1.0 / n;
    for (auto& c : out)
        c *= scale;
}

void inverse_real(std::span<const std::complex<double>> in, std::span<double> out)
{
    const int n = static_cast<int>(out.size());
    const auto& plans = cache().get(n);
    // c2r destroys its input.
    std::vector<std::complex<double>> scratch(in.begin(), in.end());
    fftw_execute_dft_c2r(plans.c2r, reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
}

}  // namespace muwave::detail
