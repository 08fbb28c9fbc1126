#pragma once

#include "cantrees/errors.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cantrees {

// A canonical t-ary tree encoded by its level profile: the number of
// internal vertices at each depth 0, 1, ..., h-1.  The empty profile is the
// single-leaf tree.  This is the normal form everything else converts to.
using Profile = std::vector<std::int64_t>;

struct ParameterVector {
    std::int64_t n;        // internal size
    std::int64_t tau;      // external size (number of leaves)
    std::int64_t h;        // height
    std::int64_t d;        // number of distinct leaf depths
    std::int64_t w;        // width: maximum number of leaves on one level
    std::int64_t m;        // leaves on the last level
    std::int64_t ell;      // total path length
    std::int64_t ell_int;  // internal path length
    std::int64_t ell_ext;  // external path length
};

bool validate_profile(const Profile& p, int t);

// throws domain_error if the profile is invalid for arity t
ParameterVector parameters(const Profile& p, int t);

// Leaves of the canonical plane tree, as words over the edge alphabet
// 1..t (symbols '1'..'9' then 'A'..'Z'; supports t <= 35).  Leaves sit
// leftmost on each level, so the words come out sorted by (length, lex).
std::vector<std::string> to_code(const Profile& p, int t);

// Multiset of leaf depths, non-decreasing.  Summing t^{-x} over the
// entries gives exactly 1 (the compact-code equality).
std::vector<std::int64_t> to_partition(const Profile& p, int t);

Profile from_partition(const std::vector<std::int64_t>& exponents, int t);
Profile from_code(const std::vector<std::string>& words, int t);

// Calls fn once per valid profile with n internal vertices, in a fixed
// deterministic order (level sizes chosen smallest-first, depth-first).
void enumerate_all(int t, std::int64_t n,
                   const std::function<void(const Profile&)>& fn);
std::vector<Profile> enumerate_all(int t, std::int64_t n);

std::string profile_json(const Profile& p);
std::string code_json(const std::vector<std::string>& words);
std::string partition_json(const std::vector<std::int64_t>& exponents);

}  // namespace cantrees
