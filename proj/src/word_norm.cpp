#include "heis/word_norm.hpp"

#include <deque>
#include <map>
#include <mutex>
#include <stdexcept>

namespace heis {

namespace {

struct NormCache {
    std::map<Monomial, int64_t> dist;
    std::deque<Monomial> frontier;
    int radius = -1;
    std::mutex mu;

    NormCache() {
        dist[Monomial{}] = 0;
        frontier.push_back(Monomial{});
        radius = 0;
    }

    void grow() {
        std::deque<Monomial> next;
        const Monomial gens[6] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
        for (const Monomial& v : frontier) {
            for (const Monomial& g : gens) {
                Monomial w = mul(v, g);
                if (dist.emplace(w, radius + 1).second) next.push_back(w);
            }
        }
        frontier = std::move(next);
        ++radius;
    }
};

}  // namespace

int64_t word_norm(const Monomial& m, int max_radius) {
    static NormCache cache;
    std::lock_guard<std::mutex> lock(cache.mu);
    while (true) {
        auto it = cache.dist.find(m);
        if (it != cache.dist.end()) return it->second;
        if (cache.radius >= max_radius)
            throw std::invalid_argument("word_norm: element beyond search radius");
        cache.grow();
    }
}

}  // namespace heis
