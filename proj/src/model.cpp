#include "cantrees/model.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>

namespace cantrees {

namespace {

char edge_symbol(int c) {
    // c in 1..t; single characters keep lexicographic order consistent
    if (c <= 9) return static_cast<char>('0' + c);
    return static_cast<char>('A' + (c - 10));
}

}  // namespace

bool validate_profile(const Profile& p, int t) {
    if (t < 2) return false;
    if (p.empty()) return true;
    if (p[0] != 1) return false;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 1) return false;
        if (i + 1 < p.size() && p[i + 1] > t * p[i]) return false;
    }
    return true;
}

ParameterVector parameters(const Profile& p, int t) {
    if (!validate_profile(p, t))
        throw domain_error("parameters: invalid level profile");
    ParameterVector r{};
    std::int64_t h = static_cast<std::int64_t>(p.size());
    r.h = h;
    r.n = 0;
    for (std::int64_t x : p) r.n += x;
    r.tau = 1 + r.n * (t - 1);
    r.m = (h == 0) ? 1 : t * p[h - 1];

    r.d = 0;
    r.w = 0;
    r.ell = 0;
    for (std::int64_t k = 0; k <= h; ++k) {
        std::int64_t v = (k == 0) ? 1 : t * p[k - 1];
        std::int64_t n_k = (k < h) ? p[k] : 0;
        std::int64_t leaves = v - n_k;
        if (leaves > 0) ++r.d;
        r.w = std::max(r.w, leaves);
        r.ell += k * v;
    }
    // ell is divisible by t: every level k >= 1 has t * n_{k-1} vertices
    r.ell_int = r.ell / t - r.n;
    r.ell_ext = r.ell - r.ell_int;
    return r;
}

std::vector<std::string> to_code(const Profile& p, int t) {
    if (!validate_profile(p, t))
        throw domain_error("to_code: invalid level profile");
    if (t > 35) throw domain_error("to_code: arity above 35 has no symbol table");
    std::vector<std::string> leaves;
    std::vector<std::string> level = {""};  // words of the current level, left to right
    std::int64_t h = static_cast<std::int64_t>(p.size());
    for (std::int64_t k = 0; k <= h; ++k) {
        std::int64_t n_k = (k < h) ? p[k] : 0;
        std::int64_t v = static_cast<std::int64_t>(level.size());
        // leaves leftmost, internal vertices rightmost
        for (std::int64_t i = 0; i < v - n_k; ++i) leaves.push_back(level[i]);
        std::vector<std::string> next;
        next.reserve(static_cast<std::size_t>(t * n_k));
        for (std::int64_t i = v - n_k; i < v; ++i)
            for (int c = 1; c <= t; ++c) next.push_back(level[i] + edge_symbol(c));
        level = std::move(next);
    }
    return leaves;
}

std::vector<std::int64_t> to_partition(const Profile& p, int t) {
    if (!validate_profile(p, t))
        throw domain_error("to_partition: invalid level profile");
    std::vector<std::int64_t> exps;
    std::int64_t h = static_cast<std::int64_t>(p.size());
    for (std::int64_t k = 0; k <= h; ++k) {
        std::int64_t v = (k == 0) ? 1 : t * p[k - 1];
        std::int64_t n_k = (k < h) ? p[k] : 0;
        for (std::int64_t i = 0; i < v - n_k; ++i) exps.push_back(k);
    }
    return exps;
}

Profile from_partition(const std::vector<std::int64_t>& exponents, int t) {
    if (t < 2) throw domain_error("from_partition: arity must be at least 2");
    if (exponents.empty())
        throw domain_error("from_partition: a code has at least one word");
    std::map<std::int64_t, std::int64_t> leaves;
    std::int64_t max_depth = 0;
    for (std::int64_t x : exponents) {
        if (x < 0) throw domain_error("from_partition: negative depth");
        ++leaves[x];
        max_depth = std::max(max_depth, x);
    }
    Profile p;
    std::int64_t v = 1;
    for (std::int64_t k = 0; k <= max_depth; ++k) {
        std::int64_t n_k = v - (leaves.count(k) ? leaves[k] : 0);
        if (n_k < 0) throw domain_error("from_partition: too many leaves at one depth");
        if (k == max_depth) {
            if (n_k != 0)
                throw domain_error("from_partition: dangling internal vertices");
            break;
        }
        if (n_k == 0)
            throw domain_error("from_partition: gap below an all-leaf level");
        p.push_back(n_k);
        v = static_cast<std::int64_t>(t) * n_k;
    }
    if (!validate_profile(p, t))
        throw domain_error("from_partition: depths do not form a compact code");
    return p;
}

Profile from_code(const std::vector<std::string>& words, int t) {
    std::vector<std::int64_t> exps;
    exps.reserve(words.size());
    for (const auto& w : words) exps.push_back(static_cast<std::int64_t>(w.size()));
    std::sort(exps.begin(), exps.end());
    Profile p = from_partition(exps, t);
    // the canonical code is unique per profile; reject anything else
    std::vector<std::string> sorted = words;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    if (sorted != to_code(p, t))
        throw domain_error("from_code: not the canonical code for its length profile");
    return p;
}

namespace {

void enumerate_rec(int t, std::int64_t rem, Profile& p,
                   const std::function<void(const Profile&)>& fn) {
    if (rem == 0) {
        fn(p);
        return;
    }
    std::int64_t cap = p.empty() ? 1 : t * p.back();
    for (std::int64_t j = 1; j <= std::min(cap, rem); ++j) {
        p.push_back(j);
        enumerate_rec(t, rem - j, p, fn);
        p.pop_back();
    }
}

}  // namespace

void enumerate_all(int t, std::int64_t n,
                   const std::function<void(const Profile&)>& fn) {
    if (t < 2) throw domain_error("enumerate_all: arity must be at least 2");
    if (n < 0) throw domain_error("enumerate_all: negative size");
    Profile p;
    enumerate_rec(t, n, p, fn);
}

std::vector<Profile> enumerate_all(int t, std::int64_t n) {
    std::vector<Profile> out;
    enumerate_all(t, n, [&out](const Profile& p) { out.push_back(p); });
    return out;
}

std::string profile_json(const Profile& p) {
    return nlohmann::json(p).dump();
}

std::string code_json(const std::vector<std::string>& words) {
    return nlohmann::json(words).dump();
}

std::string partition_json(const std::vector<std::int64_t>& exponents) {
    return nlohmann::json(exponents).dump();
}

}  // namespace cantrees
