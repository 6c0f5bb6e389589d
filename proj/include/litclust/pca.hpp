#pragma once

#include "litclust/embed.hpp"

#include <cstddef>
#include <vector>

namespace litclust {

/// Principal axes of a set of document vectors.
struct PcaModel {
    std::size_t dim = 0;                  // input dimension D
    std::size_t k = 0;                    // kept components k'
    std::vector<double> mean;             // D
    std::vector<double> components;       // k' x D, row-major, orthonormal rows
    std::vector<double> explained_variance; // k', non-increasing

    std::span<const double> component(std::size_t i) const
    {
        return {components.data() + i * dim, dim};
    }
};

/// min(k, N - 1, D): the number of components fit_pca will keep.
std::size_t clamp_components(std::size_t k, std::size_t n, std::size_t dim);

/// Fits on the rows of `set`. Components come from the thin SVD of the
/// centred matrix, ordered by singular value, each flipped so its entry of
/// largest magnitude is non-negative. Variances use the N - 1 denominator.
PcaModel fit_pca(const EmbeddingSet& set, std::size_t k);

/// rows -> components * (row - mean); keeps ids.
EmbeddingSet transform_pca(const PcaModel& model, const EmbeddingSet& set);

/// Maps reduced rows back to the input space: mean + components^T * y.
EmbeddingSet inverse_transform_pca(const PcaModel& model, const EmbeddingSet& reduced);

} // namespace litclust
