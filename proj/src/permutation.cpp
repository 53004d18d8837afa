#include "minbase/permutation.hpp"

#include "minbase/errors.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace minbase {

Permutation::Permutation(std::size_t degree) : images_(degree)
{
    std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images))
{
    std::vector<bool> seen(images_.size(), false);
    for (Point p : images_) {
        if (p >= images_.size() || seen[p])
            throw PreconditionError("image list is not a bijection");
        seen[p] = true;
    }
}

Permutation Permutation::from_cycles(std::size_t degree,
                                     const std::vector<std::vector<Point>>& cycles)
{
    Permutation result(degree);
    for (const auto& cycle : cycles) {
        if (cycle.empty()) continue;
        std::vector<bool> in_cycle(degree, false);
        for (Point p : cycle) {
            if (p >= degree) throw PreconditionError("cycle point out of range");
            if (in_cycle[p]) throw PreconditionError("repeated point inside a cycle");
            in_cycle[p] = true;
        }
        Permutation c(degree);
        for (std::size_t i = 0; i < cycle.size(); ++i)
            c.images_[cycle[i]] = cycle[(i + 1) % cycle.size()];
        result *= c;
    }
    return result;
}

bool Permutation::is_identity() const
{
    for (std::size_t i = 0; i < images_.size(); ++i)
        if (images_[i] != i) return false;
    return true;
}

bool Permutation::is_even() const
{
    std::vector<bool> seen(images_.size(), false);
    std::size_t transpositions = 0;
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (Point j = static_cast<Point>(i); !seen[j]; j = images_[j]) {
            seen[j] = true;
            ++len;
        }
        transpositions += len - 1;
    }
    return transpositions % 2 == 0;
}

Point Permutation::first_moved() const
{
    for (std::size_t i = 0; i < images_.size(); ++i)
        if (images_[i] != i) return static_cast<Point>(i);
    return static_cast<Point>(images_.size());
}

Permutation Permutation::inverse() const
{
    Permutation r;
    r.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) r.images_[images_[i]] = static_cast<Point>(i);
    return r;
}

Permutation Permutation::operator*(const Permutation& rhs) const
{
    if (rhs.degree() != degree()) throw PreconditionError("degree mismatch in product");
    Permutation r;
    r.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) r.images_[i] = rhs.images_[images_[i]];
    return r;
}

Permutation& Permutation::operator*=(const Permutation& rhs)
{
    if (rhs.degree() != degree()) throw PreconditionError("degree mismatch in product");
    for (auto& p : images_) p = rhs.images_[p];
    return *this;
}

Permutation Permutation::pow(long long e) const
{
    Permutation base = e < 0 ? inverse() : *this;
    unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    Permutation result(degree());
    while (k) {
        if (k & 1) result *= base;
        base = base * base;
        k >>= 1;
    }
    return result;
}

Permutation Permutation::conjugate_by(const Permutation& g) const
{
    return g.inverse() * (*this) * g;
}

std::size_t Permutation::order() const
{
    std::vector<bool> seen(images_.size(), false);
    std::size_t ord = 1;
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (Point j = static_cast<Point>(i); !seen[j]; j = images_[j]) {
            seen[j] = true;
            ++len;
        }
        ord = std::lcm(ord, len);
    }
    return ord;
}

std::string Permutation::to_cycle_string() const
{
    std::ostringstream out;
    std::vector<bool> seen(images_.size(), false);
    bool any = false;
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (seen[i] || images_[i] == i) continue;
        any = true;
        out << '(';
        Point j = static_cast<Point>(i);
        bool first = true;
        while (!seen[j]) {
            seen[j] = true;
            if (!first) out << ',';
            out << (j + 1);
            first = false;
            j = images_[j];
        }
        out << ')';
    }
    if (!any) return "()";
    return out.str();
}

Permutation parse_permutation(std::string_view text, std::size_t degree)
{
    std::vector<std::vector<Point>> cycles;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    while (i < text.size()) {
        if (text[i] != '(') throw PreconditionError("malformed cycle: expected '('");
        ++i;
        std::vector<Point> cycle;
        skip_ws();
        if (i < text.size() && text[i] == ')') {
            ++i;
            skip_ws();
            continue;
        }
        while (true) {
            skip_ws();
            std::size_t start = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (start == i) throw PreconditionError("malformed cycle: expected a point");
            unsigned long long v = std::stoull(std::string(text.substr(start, i - start)));
            if (v == 0 || v > degree) throw PreconditionError("point out of range: " + std::to_string(v));
            cycle.push_back(static_cast<Point>(v - 1));
            skip_ws();
            if (i >= text.size()) throw PreconditionError("malformed cycle: missing ')'");
            if (text[i] == ',') {
                ++i;
                continue;
            }
            if (text[i] == ')') {
                ++i;
                break;
            }
            throw PreconditionError("malformed cycle: unexpected character");
        }
        cycles.push_back(std::move(cycle));
        skip_ws();
    }
    return Permutation::from_cycles(degree, cycles);
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept
{
    std::size_t h = 1469598103934665603ull;
    for (Point x : p.images()) {
        h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

}  // namespace minbase
