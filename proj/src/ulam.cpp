#include "pwexp/ulam.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "pwexp/error.hpp"

namespace pwexp {

UlamOperator build_ulam(const PiecewiseMap& m, int resolution) {
    if (resolution < 2) throw Error(ErrorKind::InvalidInput, "Ulam resolution must be >= 2");
    UlamOperator op{make_grid(m.region(), resolution), {}};
    const UlamGrid& grid = op.grid;
    const std::size_t n = grid.cells.size();

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(n * 8);
    for (std::size_t i = 0; i < n; ++i) {
        const geom::ConvexPolygon& cell = grid.cells[i];
        const double cell_area = cell.area();
        double row = 0.0;
        for (const Branch& b : m.branches()) {
            const geom::ConvexPolygon piece = geom::intersect(cell, b.domain);
            if (piece.empty()) continue;
            const geom::ConvexPolygon img = geom::affine_image(b.map, piece);
            // m(cell ∩ branch^-1(target)) = area(img ∩ target) / |J|.
            const double scale = 1.0 / (b.jacobian_abs * cell_area);
            for (int j : grid.candidates(img.bounds())) {
                const double a = geom::intersect(img, grid.cells[static_cast<std::size_t>(j)]).area();
                if (a <= 0.0) continue;
                const double w = a * scale;
                triplets.emplace_back(static_cast<int>(i), j, w);
                row += w;
            }
        }
        if ((1.0 - row) * cell_area > geom::kEpsArea) {
            throw Error(ErrorKind::ResolutionTooLow,
                        "cell " + std::to_string(i) + " maps outside the region (row sum " + std::to_string(row) + ")");
        }
    }
    op.matrix.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    op.matrix.setFromTriplets(triplets.begin(), triplets.end());
    op.matrix.makeCompressed();
    return op;
}

StationaryResult stationary_density(const SparseMatrix& matrix, std::span<const double> measures, double tol,
                                    int max_iter) {
    const auto n = static_cast<Eigen::Index>(measures.size());
    if (matrix.rows() != n || matrix.cols() != n) {
        throw Error(ErrorKind::InvalidInput, "matrix and measure sizes disagree");
    }
    // Iterate on cell masses; density = mass / measure.
    Eigen::VectorXd mass(n);
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) total += measures[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 0; i < n; ++i) mass[i] = measures[static_cast<std::size_t>(i)] / total;

    constexpr int kPlateauWindow = 200;
    StationaryResult out;
    double best = std::numeric_limits<double>::infinity();
    int since_best = 0;
    Eigen::VectorXd next(n);
    for (int it = 1; it <= max_iter; ++it) {
        next = matrix.transpose() * mass;
        const double residual = (next - mass).lpNorm<1>();
        if (out.averaged) next = 0.5 * (next + mass);
        next = next.cwiseMax(0.0);
        next /= next.sum();
        mass.swap(next);
        out.iterations = it;
        out.residual = residual;
        if (residual < tol) {
            out.converged = true;
            break;
        }
        if (residual < best * (1.0 - 1e-3)) {
            best = residual;
            since_best = 0;
        } else if (++since_best >= kPlateauWindow && !out.averaged) {
            out.averaged = true;
            best = std::numeric_limits<double>::infinity();
            since_best = 0;
        }
    }
    out.density.resize(measures.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        out.density[static_cast<std::size_t>(i)] = mass[i] / measures[static_cast<std::size_t>(i)];
    }
    return out;
}

StationaryResult ulam_fixed(const UlamOperator& op, double tol, int max_iter) {
    const std::vector<double> areas = op.grid.areas();
    return stationary_density(op.matrix, areas, tol, max_iter);
}

std::vector<double> row_sums(const SparseMatrix& matrix) {
    std::vector<double> out(static_cast<std::size_t>(matrix.rows()), 0.0);
    for (Eigen::Index r = 0; r < matrix.outerSize(); ++r) {
        for (SparseMatrix::InnerIterator it(matrix, r); it; ++it) out[static_cast<std::size_t>(r)] += it.value();
    }
    return out;
}

}  // namespace pwexp
