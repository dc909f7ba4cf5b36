#include "drwlab/weight.hpp"

#include <algorithm>

namespace drwlab {

Weight Weight::of(std::initializer_list<long> xs) {
    std::vector<Rat> c;
    for (long x : xs) c.emplace_back(x);
    return Weight(std::move(c));
}

Weight Weight::scaled(const Rat& s) const {
    Weight w = *this;
    for (auto& x : w.coords) x *= s;
    return w;
}

bool Weight::is_integral() const {
    return std::all_of(coords.begin(), coords.end(), [](const Rat& x) { return x.get_den() == 1; });
}

int Weight::depth(long p) const {
    int s = 0;
    for (const auto& x : coords) {
        if (x == 0) continue;
        s = std::max(s, -valuation(x, p));
    }
    return s;
}

bool Weight::is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](const Rat& x) { return x == 0; });
}

std::string Weight::to_string() const {
    if (coords.empty()) return "untwisted";
    std::string s = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i) s += ",";
        s += coords[i].get_str();
    }
    return s + ")";
}

WeightWindow WeightWindow::box(std::vector<Rat> lo, std::vector<Rat> hi, int depth) {
    if (lo.size() != hi.size()) fail(ErrorKind::ShapeMismatch, "window bounds differ in dimension");
    WeightWindow w;
    w.exhaustive = true;
    w.depth = depth;
    w.lo = std::move(lo);
    w.hi = std::move(hi);
    return w;
}

WeightStatus WeightWindow::classify(const Weight& w, long p) const {
    if (w.dim() != lo.size() || w.is_untwisted()) return WeightStatus::OutOfWindow;
    if (nonnegative)
        for (const auto& x : w.coords)
            if (x < 0) return WeightStatus::Absent;
    // Denominators must be powers of p.
    for (const auto& x : w.coords) {
        Int den = x.get_den();
        while (den % p == 0) den /= p;
        if (den != 1) return WeightStatus::OutOfWindow;
    }
    if (w.depth(p) > depth) return depth_exhaustive ? WeightStatus::Absent : WeightStatus::OutOfWindow;
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (w.coords[i] < lo[i] || w.coords[i] > hi[i]) return WeightStatus::OutOfWindow;
    return exhaustive ? WeightStatus::Absent : WeightStatus::OutOfWindow;
}

}  // namespace drwlab
