#include "heis/words.hpp"

#include <json.hpp>
#include <stdexcept>

#include "heis/kernels.hpp"

namespace heis::entropy {

using kernels::DenseBox;
using kernels::Term;

WordCountTable word_count_heisenberg(int64_t n_max, bool parallel) {
    if (n_max < 0) throw std::invalid_argument("word_count: n_max >= 0");
    if (n_max > 60) throw overflow_error("word_count_heisenberg: n_max > 60 exceeds 128-bit range");
    WordCountTable t{WordCountTable::Group::Heisenberg, n_max,
                     std::vector<int128>(size_t(n_max + 1), 0)};
    t.counts[0] = 1;
    if (n_max == 0) return t;

    // walk to depth ceil(n_max/2); the count at step s+u is the pairing of
    // the step-s and step-u tables, since the step element is *-symmetric
    int64_t half = (n_max + 1) / 2;
    std::vector<Term> steps = {{1, 0, 0, 1}, {-1, 0, 0, 1}, {0, 1, 0, 1}, {0, -1, 0, 1}};

    auto make_box = [&](int64_t s) {
        DenseBox b;
        b.kmin = -s;
        b.kmax = s;
        b.lmin = -s;
        b.lmax = s;
        // |m| <= a (s - a) <= s^2/4 with a the number of x-type letters
        int64_t mb = (s * s) / 4;
        b.mmin = -mb;
        b.mmax = mb;
        b.allocate();
        return b;
    };

    DenseBox cur = make_box(0);
    cur.set(0, 0, 0, 1);
    for (int64_t s = 1; s <= half; ++s) {
        DenseBox next = make_box(s);
        kernels::convolve(cur, next, steps, parallel);
        if (2 * s - 1 <= n_max)
            t.counts[size_t(2 * s - 1)] = kernels::pair_constant_term(cur, next);
        if (2 * s <= n_max) t.counts[size_t(2 * s)] = kernels::pair_constant_term(next, next);
        cur = std::move(next);
    }
    return t;
}

WordCountTable word_count_z2(int64_t n_max) {
    if (n_max > 66) throw overflow_error("word_count_z2: n_max too large for 128 bits");
    WordCountTable t{WordCountTable::Group::Z2, n_max, std::vector<int128>(size_t(n_max + 1), 0)};
    for (int64_t n = 0; n <= n_max; n += 2) {
        int64_t h = n / 2;
        // C(n, h)
        int128 binom = 1;
        for (int64_t i = 1; i <= h; ++i)
            binom = checked_mul(binom, n - h + i) / i;  // exact at every step
        t.counts[size_t(n)] = checked_mul(binom, binom);
    }
    return t;
}

WordCountTable word_count_free2(int64_t n_max) {
    if (n_max > 60) throw overflow_error("word_count_free2: n_max too large for 128 bits");
    WordCountTable t{WordCountTable::Group::Free2, n_max, std::vector<int128>(size_t(n_max + 1), 0)};
    t.counts[0] = 1;
    // sqrt(1-12t) = sum s_k t^k with s_0 = 1, s_{k+1} = 6(2k-1) s_k / (k+1);
    // G(t) = (2 sqrt(1-12t) - 1) / (1 - 16 t), so
    // r(2n) = sum_k (2 s_k - [k=0]) 16^{n-k}
    int64_t half = n_max / 2;
    std::vector<int128> s(size_t(half + 1));
    s[0] = 1;
    for (int64_t k = 0; k + 1 <= half; ++k) {
        int128 num = checked_mul(checked_mul((int128)6, 2 * k - 1), s[size_t(k)]);
        if (num % (k + 1) != 0) throw std::logic_error("word_count_free2: non-integer series");
        s[size_t(k + 1)] = num / (k + 1);
    }
    for (int64_t n = 1; n <= half; ++n) {
        int128 acc = 0;
        int128 p16 = 1;
        for (int64_t k = n; k >= 0; --k) {
            int128 coef = checked_mul((int128)2, s[size_t(k)]);
            if (k == 0) coef = checked_sub(coef, 1);
            acc = checked_add(acc, checked_mul(coef, p16));
            if (k > 0) p16 = checked_mul(p16, 16);
        }
        t.counts[size_t(2 * n)] = acc;
    }
    return t;
}

std::string group_name(WordCountTable::Group g) {
    switch (g) {
        case WordCountTable::Group::Heisenberg: return "heisenberg";
        case WordCountTable::Group::Z2: return "z2";
        case WordCountTable::Group::Free2: return "free2";
    }
    return "?";
}

std::string cache_to_json(const WordCountTable& t) {
    nlohmann::json j;
    j["schema"] = "heisdyn-wordcount/1";
    j["group"] = group_name(t.group);
    j["n_max"] = t.n_max;
    std::vector<std::string> counts;
    counts.reserve(t.counts.size());
    for (auto& c : t.counts) counts.push_back(to_string(c));
    j["counts"] = counts;
    return j.dump(2);
}

bool cache_from_json(const std::string& json, WordCountTable& out) {
    nlohmann::json j = nlohmann::json::parse(json, nullptr, false);
    if (j.is_discarded()) return false;
    if (j.value("schema", "") != "heisdyn-wordcount/1") return false;
    std::string g = j.value("group", "");
    if (g == "heisenberg")
        out.group = WordCountTable::Group::Heisenberg;
    else if (g == "z2")
        out.group = WordCountTable::Group::Z2;
    else if (g == "free2")
        out.group = WordCountTable::Group::Free2;
    else
        return false;
    out.n_max = j.value("n_max", int64_t(-1));
    if (out.n_max < 0) return false;
    out.counts.clear();
    for (auto& s : j.at("counts")) out.counts.push_back(parse_int128(s.get<std::string>()));
    return out.counts.size() == size_t(out.n_max + 1);
}

}  // namespace heis::entropy
