#pragma once

// Weight labels and the finite windows of weights a model is built on.

#include <string>
#include <vector>

#include "drwlab/padic.hpp"

namespace drwlab {

/// A vector over Z[1/p]; the empty vector is the "untwisted" label.
struct Weight {
    std::vector<Rat> coords;

    Weight() = default;
    explicit Weight(std::vector<Rat> c) : coords(std::move(c)) {}
    static Weight untwisted() { return Weight(); }
    static Weight of(std::initializer_list<long> xs);

    bool is_untwisted() const { return coords.empty(); }
    std::size_t dim() const { return coords.size(); }
    Weight scaled(const Rat& s) const;
    bool is_integral() const;
    /// Smallest s >= 0 with p^s * w integral.
    int depth(long p) const;
    bool is_zero() const;

    std::string to_string() const;
    bool operator==(const Weight&) const = default;
    bool operator<(const Weight& o) const { return coords < o.coords; }
};

enum class WeightStatus {
    Present,      // the complex has a block at this weight
    Absent,       // inside the window, so the module is zero there by construction
    OutOfWindow,  // not computed; statements about it are untestable
};

/// The region of weights a model was computed on. Inside the box `lo..hi`
/// with depth <= `depth`, an `exhaustive` window asserts that unlisted weights
/// carry the zero module. Weights deeper than `depth` are zero when
/// `depth_exhaustive` (e.g. de Rham complexes only have integral weights) and
/// merely unknown otherwise. `nonnegative` declares negative coordinates zero.
struct WeightWindow {
    bool exhaustive = false;
    int depth = 0;
    bool depth_exhaustive = false;
    bool nonnegative = false;
    std::vector<Rat> lo;
    std::vector<Rat> hi;

    static WeightWindow box(std::vector<Rat> lo, std::vector<Rat> hi, int depth);
    /// Absent or OutOfWindow for a weight not present in the complex.
    WeightStatus classify(const Weight& w, long p) const;
};

}  // namespace drwlab
