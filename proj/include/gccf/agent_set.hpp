#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

// Capacity knob: number of 64-bit words per agent set.  Two words (128
// agents) covers every built-in workload; raise it at compile time for
// larger instances, e.g. -DGCCF_AGENT_SET_WORDS=4.
#ifndef GCCF_AGENT_SET_WORDS
#define GCCF_AGENT_SET_WORDS 2
#endif

namespace gccf {

/// Fixed-capacity bitset of agent indices.  Value type: cheap to copy,
/// hashable, totally ordered, so it can key memo tables and sort blocks.
template <std::size_t Words>
class basic_agent_set {
    static_assert(Words >= 1);

public:
    static constexpr unsigned capacity() { return static_cast<unsigned>(Words) * 64u; }

    constexpr basic_agent_set() : w_{} {}

    /// Set containing exactly agent i.
    static basic_agent_set singleton(unsigned i) {
        basic_agent_set s;
        s.insert(i);
        return s;
    }

    /// Set {0, 1, ..., n-1}.
    static basic_agent_set first_n(unsigned n) {
        if (n > capacity()) throw std::out_of_range("agent set capacity exceeded");
        basic_agent_set s;
        for (std::size_t k = 0; k < Words; ++k) {
            unsigned lo = static_cast<unsigned>(k) * 64u;
            if (n <= lo)
                break;
            unsigned bits = n - lo >= 64 ? 64 : n - lo;
            s.w_[k] = bits == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
        }
        return s;
    }

    void insert(unsigned i) {
        check(i);
        w_[i >> 6] |= std::uint64_t{1} << (i & 63u);
    }

    void erase(unsigned i) {
        check(i);
        w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63u));
    }

    bool contains(unsigned i) const {
        if (i >= capacity()) return false;
        return (w_[i >> 6] >> (i & 63u)) & 1u;
    }

    bool empty() const {
        for (auto w : w_)
            if (w) return false;
        return true;
    }

    /// Number of agents in the set.
    unsigned size() const {
        unsigned c = 0;
        for (auto w : w_) c += static_cast<unsigned>(std::popcount(w));
        return c;
    }

    /// Smallest member; throws on the empty set.
    unsigned lowest() const {
        for (std::size_t k = 0; k < Words; ++k)
            if (w_[k]) return static_cast<unsigned>(k * 64 + std::countr_zero(w_[k]));
        throw std::logic_error("lowest() on empty agent set");
    }

    bool intersects(const basic_agent_set& o) const {
        for (std::size_t k = 0; k < Words; ++k)
            if (w_[k] & o.w_[k]) return true;
        return false;
    }

    bool contains_all(const basic_agent_set& o) const {
        for (std::size_t k = 0; k < Words; ++k)
            if ((o.w_[k] & ~w_[k]) != 0) return false;
        return true;
    }

    basic_agent_set& operator|=(const basic_agent_set& o) {
        for (std::size_t k = 0; k < Words; ++k) w_[k] |= o.w_[k];
        return *this;
    }
    basic_agent_set& operator&=(const basic_agent_set& o) {
        for (std::size_t k = 0; k < Words; ++k) w_[k] &= o.w_[k];
        return *this;
    }
    basic_agent_set& operator-=(const basic_agent_set& o) {
        for (std::size_t k = 0; k < Words; ++k) w_[k] &= ~o.w_[k];
        return *this;
    }

    friend basic_agent_set operator|(basic_agent_set a, const basic_agent_set& b) { return a |= b; }
    friend basic_agent_set operator&(basic_agent_set a, const basic_agent_set& b) { return a &= b; }
    friend basic_agent_set operator-(basic_agent_set a, const basic_agent_set& b) { return a -= b; }

    friend bool operator==(const basic_agent_set& a, const basic_agent_set& b) { return a.w_ == b.w_; }
    friend bool operator!=(const basic_agent_set& a, const basic_agent_set& b) { return !(a == b); }

    /// Numeric order (most significant word first); any total order works
    /// for canonical sorting, this one is branch-cheap.
    friend bool operator<(const basic_agent_set& a, const basic_agent_set& b) {
        for (std::size_t k = Words; k-- > 0;)
            if (a.w_[k] != b.w_[k]) return a.w_[k] < b.w_[k];
        return false;
    }

    /// Visit members in ascending order.
    template <class F>
    void for_each(F&& f) const {
        for (std::size_t k = 0; k < Words; ++k) {
            std::uint64_t w = w_[k];
            while (w) {
                unsigned i = static_cast<unsigned>(k * 64 + std::countr_zero(w));
                f(i);
                w &= w - 1;
            }
        }
    }

    std::vector<unsigned> members() const {
        std::vector<unsigned> out;
        out.reserve(size());
        for_each([&](unsigned i) { out.push_back(i); });
        return out;
    }

    /// "{0 2 5}"
    std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for_each([&](unsigned i) {
            if (!first) s += ' ';
            s += std::to_string(i);
            first = false;
        });
        s += '}';
        return s;
    }

    std::size_t hash() const {
        // splitmix-style word mix, order dependent
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (auto w : w_) {
            std::uint64_t x = w + 0x9e3779b97f4a7c15ull + h;
            x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
            x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
            h = x ^ (x >> 31);
        }
        return static_cast<std::size_t>(h);
    }

private:
    static void check(unsigned i) {
        if (i >= capacity())
            throw std::out_of_range("agent index " + std::to_string(i) +
                                    " exceeds compiled capacity " + std::to_string(capacity()));
    }

    std::array<std::uint64_t, Words> w_;
};

using agent_set = basic_agent_set<GCCF_AGENT_SET_WORDS>;

}  // namespace gccf

template <std::size_t Words>
struct std::hash<gccf::basic_agent_set<Words>> {
    std::size_t operator()(const gccf::basic_agent_set<Words>& s) const noexcept { return s.hash(); }
};
