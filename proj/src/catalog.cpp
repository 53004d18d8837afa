#include "minbase/catalog.hpp"

#include "minbase/errors.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <numeric>
#include <regex>
#include <sstream>
#include <unordered_map>

namespace minbase {
namespace groups {

namespace {

Permutation from_map(std::size_t n, auto&& f)
{
    std::vector<Point> img(n);
    for (std::size_t x = 0; x < n; ++x) img[x] = static_cast<Point>(f(x));
    return Permutation(img);
}

bool is_prime(std::size_t p)
{
    if (p < 2) return false;
    for (std::size_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// 2x2 matrices over F_3 packed as (a,b,c,d), row vectors times matrix
using Mat2 = std::array<int, 4>;

// action of a matrix on the 8 nonzero vectors (u,v) of F_3^2, point = 3u+v-1
Permutation vector_action(const Mat2& m)
{
    return from_map(8, [&](std::size_t x) {
        const int u = static_cast<int>((x + 1) / 3), v = static_cast<int>((x + 1) % 3);
        const int nu = (u * m[0] + v * m[2]) % 3, nv = (u * m[1] + v * m[3]) % 3;
        return static_cast<std::size_t>(3 * nu + nv - 1);
    });
}

// Moebius maps on P^1(F_7), point 7 is infinity
Permutation moebius7(int a, int b, int c, int d)
{
    auto inv = [](int x) {
        for (int y = 1; y < 7; ++y)
            if (x * y % 7 == 1) return y;
        return 0;
    };
    return from_map(8, [&](std::size_t x) -> std::size_t {
        if (x == 7) return c == 0 ? 7 : static_cast<std::size_t>(a * inv(c) % 7);
        const int num = (a * static_cast<int>(x) + b) % 7, den = (c * static_cast<int>(x) + d) % 7;
        if (den == 0) return 7;
        return static_cast<std::size_t>(num * inv(den) % 7);
    });
}

}  // namespace

PermGroup symmetric(std::size_t n)
{
    if (n < 1) throw PreconditionError("S_n needs n >= 1");
    std::vector<Permutation> gens;
    if (n >= 2) {
        gens.push_back(from_map(n, [&](std::size_t x) { return (x + 1) % n; }));
        gens.push_back(Permutation::from_cycles(n, {{0, 1}}));
    }
    return PermGroup(n, gens);
}

PermGroup alternating(std::size_t n)
{
    if (n < 1) throw PreconditionError("A_n needs n >= 1");
    std::vector<Permutation> gens;
    for (Point k = 2; k < n; ++k) gens.push_back(Permutation::from_cycles(n, {{0, 1, k}}));
    return PermGroup(n, gens);
}

PermGroup cyclic(std::size_t n)
{
    if (n < 1) throw PreconditionError("C_n needs n >= 1");
    return PermGroup(n, {from_map(n, [&](std::size_t x) { return (x + 1) % n; })});
}

PermGroup dihedral(std::size_t n)
{
    if (n < 2) throw PreconditionError("dihedral group needs order >= 4");
    if (n == 2) return direct_product(cyclic(2), cyclic(2));
    return PermGroup(n, {from_map(n, [&](std::size_t x) { return (x + 1) % n; }),
                         from_map(n, [&](std::size_t x) { return (n - x) % n; })});
}

PermGroup dicyclic(std::size_t n)
{
    if (n < 2) throw PreconditionError("dicyclic group needs n >= 2");
    // elements a^i x^j, point i + 2n*j; right multiplication by a and by x
    const std::size_t m = 2 * n, deg = 2 * m;
    auto a = from_map(deg, [&](std::size_t p) {
        const std::size_t i = p % m, j = p / m;
        return j == 0 ? (i + 1) % m : m + (i + m - 1) % m;
    });
    auto x = from_map(deg, [&](std::size_t p) {
        const std::size_t i = p % m, j = p / m;
        return j == 0 ? m + i : (i + n) % m;
    });
    return PermGroup(deg, {a, x});
}

PermGroup elementary_abelian(std::size_t p, std::size_t k)
{
    if (!is_prime(p) || k < 1) throw PreconditionError("C_p^k needs p prime and k >= 1");
    std::size_t deg = 1;
    for (std::size_t i = 0; i < k; ++i) deg *= p;
    std::vector<Permutation> gens;
    std::size_t stride = 1;
    for (std::size_t i = 0; i < k; ++i, stride *= p)
        gens.push_back(from_map(deg, [&](std::size_t x) {
            const std::size_t digit = (x / stride) % p;
            return x - digit * stride + ((digit + 1) % p) * stride;
        }));
    return PermGroup(deg, gens);
}

PermGroup frobenius(std::size_t p, std::size_t k)
{
    if (!is_prime(p) || k < 1 || (p - 1) % k) throw PreconditionError("Frob(p,k) needs p prime and k | p-1");
    // r = g^((p-1)/k) for a primitive root g
    std::size_t g = 2;
    for (;; ++g) {
        std::size_t y = 1, ord = 0;
        do {
            y = y * g % p;
            ++ord;
        } while (y != 1);
        if (ord == p - 1 || p == 2) break;
    }
    std::size_t r = 1;
    for (std::size_t i = 0; i < (p - 1) / k; ++i) r = r * g % p;
    return PermGroup(p, {from_map(p, [&](std::size_t x) { return (x + 1) % p; }),
                         from_map(p, [&](std::size_t x) { return x * r % p; })});
}

PermGroup wreath(std::size_t b, std::size_t a)
{
    if (a < 1 || b < 1) throw PreconditionError("wr(b,a) needs a, b >= 1");
    const std::size_t n = a * b;
    std::vector<Permutation> gens;
    // point = block * b + offset
    if (b >= 2) {
        gens.push_back(from_map(n, [&](std::size_t x) { return x < b ? (x + 1) % b : x; }));
        gens.push_back(Permutation::from_cycles(n, {{0, 1}}));
    }
    if (a >= 2) {
        gens.push_back(from_map(n, [&](std::size_t x) { return (x + b) % n; }));
        gens.push_back(from_map(n, [&](std::size_t x) {
            const std::size_t blk = x / b, off = x % b;
            return (blk == 0 ? 1 : blk == 1 ? 0 : blk) * b + off;
        }));
    }
    return PermGroup(n, gens);
}

PermGroup regular(const PermGroup& G, std::size_t cap)
{
    auto elems = G.elements(cap);
    std::sort(elems.begin(), elems.end());
    std::unordered_map<Permutation, std::size_t, PermutationHash> index;
    for (std::size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], i);
    std::vector<Permutation> gens;
    for (const auto& g : G.generators())
        gens.push_back(from_map(elems.size(), [&](std::size_t x) { return index.at(elems[x] * g); }));
    return PermGroup(elems.size(), gens);
}

PermGroup sl23()
{
    const PermGroup natural(8, {vector_action({1, 1, 0, 1}), vector_action({1, 0, 1, 1})});
    return regular(natural);
}

PermGroup gl23()
{
    return PermGroup(8, {vector_action({1, 1, 0, 1}), vector_action({2, 0, 0, 1}), vector_action({1, 0, 1, 1})});
}

PermGroup psl27() { return PermGroup(8, {moebius7(1, 1, 0, 1), moebius7(2, 0, 0, 1), moebius7(0, 6, 1, 0)}); }

PermGroup pgl27() { return PermGroup(8, {moebius7(1, 1, 0, 1), moebius7(3, 0, 0, 1), moebius7(0, 6, 1, 0)}); }

PermGroup direct_product(const PermGroup& A, const PermGroup& B)
{
    const std::size_t m = A.degree(), n = m + B.degree();
    std::vector<Permutation> gens;
    for (const auto& g : A.generators())
        gens.push_back(from_map(n, [&](std::size_t x) { return x < m ? g[static_cast<Point>(x)] : x; }));
    for (const auto& g : B.generators())
        gens.push_back(from_map(n, [&](std::size_t x) { return x < m ? x : m + g[static_cast<Point>(x - m)]; }));
    return PermGroup(n, gens);
}

}  // namespace groups

namespace {

std::size_t to_size(const std::string& s)
{
    std::size_t v = 0;
    for (char c : s) v = v * 10 + static_cast<std::size_t>(c - '0');
    return v;
}

std::vector<std::string> split_product(const std::string& d)
{
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char c : d) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == 'x' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace

PermGroup parse_group_spec(const std::string& descriptor)
{
    using namespace groups;
    static const std::regex sym_re(R"(S(\d+))"), alt_re(R"(A(\d+))"), cyc_re(R"(C(\d+))"), dih_re(R"(D(\d+))"),
        dic_re(R"(Q(\d+))"), ea_re(R"(C(\d+)\^(\d+))"), frob_re(R"(Frob\((\d+),(\d+)\))"), wr_re(R"(wr\((\d+),(\d+)\))");
    std::smatch m;
    const std::string& d = descriptor;

    if (auto parts = split_product(d); parts.size() > 1) {
        PermGroup acc = parse_group_spec(parts[0]);
        for (std::size_t i = 1; i < parts.size(); ++i) acc = direct_product(acc, parse_group_spec(parts[i]));
        return acc;
    }
    if (d == "SL23") return sl23();
    if (d == "GL23") return gl23();
    if (d == "L27") return psl27();
    if (d == "PGL27") return pgl27();
    if (std::regex_match(d, m, sym_re)) return symmetric(to_size(m[1]));
    if (std::regex_match(d, m, alt_re)) return alternating(to_size(m[1]));
    if (std::regex_match(d, m, ea_re)) return elementary_abelian(to_size(m[1]), to_size(m[2]));
    if (std::regex_match(d, m, cyc_re)) return cyclic(to_size(m[1]));
    if (std::regex_match(d, m, dih_re)) {
        const std::size_t order = to_size(m[1]);
        if (order < 4 || order % 2) throw PreconditionError("dihedral order must be even and >= 4: " + d);
        return dihedral(order / 2);
    }
    if (std::regex_match(d, m, dic_re)) {
        const std::size_t order = to_size(m[1]);
        if (order < 8 || order % 4) throw PreconditionError("quaternion/dicyclic order must be a multiple of 4, >= 8: " + d);
        return dicyclic(order / 4);
    }
    if (std::regex_match(d, m, frob_re)) return frobenius(to_size(m[1]), to_size(m[2]));
    if (std::regex_match(d, m, wr_re)) return wreath(to_size(m[1]), to_size(m[2]));

    std::ifstream in(d);
    if (!in) throw PreconditionError("unknown group descriptor: " + d);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_group_file(ss.str());
}

const std::vector<CatalogEntry>& catalog()
{
    static const std::vector<CatalogEntry> entries = {
        // soluble, order <= 500
        {"C2", "soluble", true},
        {"C6", "soluble", true},
        {"C12", "soluble", true},
        {"C30", "soluble", true},
        {"C2^2", "soluble", true},
        {"C2^3", "soluble", true},
        {"C2^4", "soluble", true},
        {"C3^2", "soluble", true},
        {"C5^2", "soluble", true},
        {"C4xC2", "soluble", true},
        {"D6", "soluble", false},
        {"D8", "soluble", true},
        {"D10", "soluble", false},
        {"D12", "soluble", false},
        {"D16", "soluble", true},
        {"Q8", "soluble", true},
        {"Q12", "soluble", false},
        {"Q16", "soluble", true},
        {"C2xD8", "soluble", true},
        {"C3xS3", "soluble", false},
        {"S3xS3", "soluble", false},
        {"A4", "soluble", false},
        {"S4", "soluble", false},
        {"SL23", "soluble", false},
        {"GL23", "soluble", false},
        {"Frob(5,4)", "soluble", false},
        {"Frob(7,3)", "soluble", false},
        {"Frob(11,5)", "soluble", false},
        {"Frob(13,12)", "soluble", false},
        {"C2xA4", "soluble", false},
        {"wr(2,3)", "soluble", false},
        {"wr(3,2)", "soluble", false},
        // almost simple
        {"A5", "almost_simple", false},
        {"S5", "almost_simple", false},
        {"L27", "almost_simple", false},
        {"PGL27", "almost_simple", false},
        {"A6", "almost_simple", false},
        {"S6", "almost_simple", false},
    };
    return entries;
}

}  // namespace minbase
