// FFTW backend. Plans are cached per layout; the planner is not thread-safe,
// so plan creation is serialized. Execution on caller buffers is re-entrant.
#include "dkg/field.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace dkg::detail {

namespace {

struct PlanKey {
    int n_t, n_x, ncomp, sign;
    bool spacetime;
    bool operator<(const PlanKey& o) const {
        return std::tie(n_t, n_x, ncomp, sign, spacetime) <
               std::tie(o.n_t, o.n_x, o.ncomp, o.sign, o.spacetime);
    }
};

std::mutex plan_mutex;
std::map<PlanKey, fftw_plan>& plan_cache() {
    static std::map<PlanKey, fftw_plan> cache;
    return cache;
}

fftw_plan get_plan(const PlanKey& key, fftw_complex* data) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto& cache = plan_cache();
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    int dims[3];
    int rank = 0;
    if (key.spacetime) dims[rank++] = key.n_t;
    dims[rank++] = key.n_x;
    dims[rank++] = key.n_x;

    // FFTW_UNALIGNED: plans stay valid for any std::vector buffer.
    fftw_plan plan = fftw_plan_many_dft(rank, dims, key.ncomp, data, nullptr, key.ncomp, 1,
                                        data, nullptr, key.ncomp, 1,
                                        key.sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                        FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw std::runtime_error("fftw_plan_many_dft failed");
    cache.emplace(key, plan);
    return plan;
}

} // namespace

void fft_inplace(std::span<cplx> data, int n_t, int n_x, int ncomp, bool spacetime, int sign) {
    auto* raw = reinterpret_cast<fftw_complex*>(data.data());
    const PlanKey key{n_t, n_x, ncomp, sign, spacetime};
    fftw_plan plan = get_plan(key, raw);
    fftw_execute_dft(plan, raw, raw);

    const std::size_t n_lattice = (spacetime ? std::size_t(n_t) : 1) * std::size_t(n_x) * n_x;
    const double scale = 1.0 / std::sqrt(double(n_lattice));
    for (auto& v : data) v *= scale;
}

} // namespace dkg::detail
