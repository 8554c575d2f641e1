// Copyright 2026 The shadowfit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// \file
/// Dense linear solves and the least-squares primitives used for calibration.

#ifndef SHADOWFIT_NUMERICS_HPP
#define SHADOWFIT_NUMERICS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "shadowfit/error.hpp"

namespace shadowfit {

/// Above this infinity-norm condition estimate the elimination result is
/// discarded in favour of an orthogonal factorization.
inline constexpr double kConditionFallback = 1e12;

/// Square system A x = b, A stored row-major.
struct DenseSystem
{
	std::size_t n = 0;
	std::vector<double> matrix;
	std::vector<double> rhs;

	DenseSystem() = default;

	explicit DenseSystem(std::size_t size)
	: n(size), matrix(size * size, 0.0), rhs(size, 0.0)
	{
	}

	DenseSystem(std::vector<std::vector<double>> const& rows, std::vector<double> b)
	: n(rows.size()), rhs(std::move(b))
	{
		matrix.reserve(n * n);
		for (auto const& row : rows)
		{
			if (row.size() != n)
			{
				throw Error(Errc::invalid_input, "matrix must be square");
			}
			matrix.insert(matrix.end(), row.begin(), row.end());
		}
	}

	double& at(std::size_t i, std::size_t j) { return matrix[i * n + j]; }
	double at(std::size_t i, std::size_t j) const { return matrix[i * n + j]; }

	void validate() const
	{
		if (n == 0)
		{
			throw Error(Errc::invalid_input, "system must have at least one unknown");
		}
		if (matrix.size() != n * n || rhs.size() != n)
		{
			throw Error(Errc::invalid_input, "matrix must be square and match the right-hand side");
		}
		auto finite = [](double v) { return std::isfinite(v); };
		if (!std::all_of(matrix.begin(), matrix.end(), finite) || !std::all_of(rhs.begin(), rhs.end(), finite))
		{
			throw Error(Errc::invalid_input, "system entries must be finite");
		}
	}
};

enum class SolveMethod
{
	elimination,
	orthogonal
};

struct SolveDiagnostics
{
	/// |U(k,k)| in elimination order.
	std::vector<double> pivot_magnitudes;
	/// ||A||_inf * ||A^-1||_inf, at least 1.
	double condition_estimate = 1.0;
	/// Distances were divided by their maximum before assembling moments.
	bool scaled = false;
	SolveMethod method = SolveMethod::elimination;
};

struct DenseSolution
{
	std::vector<double> x;
	SolveDiagnostics diagnostics;
};

namespace detail {

inline double inf_norm(DenseSystem const& sys)
{
	double norm = 0.0;
	for (std::size_t i = 0; i < sys.n; ++i)
	{
		double row = 0.0;
		for (std::size_t j = 0; j < sys.n; ++j)
		{
			row += std::abs(sys.at(i, j));
		}
		norm = std::max(norm, row);
	}
	return norm;
}

/// In-place LU factorization with partial pivoting. Ties on the pivot
/// magnitude go to the lowest row index.
struct LuFactors
{
	std::size_t n;
	std::vector<double> lu;
	std::vector<std::size_t> perm;
	std::vector<double> pivots;

	explicit LuFactors(DenseSystem const& sys)
	: n(sys.n), lu(sys.matrix), perm(sys.n)
	{
		std::iota(perm.begin(), perm.end(), std::size_t{0});
		for (std::size_t k = 0; k < n; ++k)
		{
			std::size_t p = k;
			double best = std::abs(lu[k * n + k]);
			for (std::size_t i = k + 1; i < n; ++i)
			{
				double const v = std::abs(lu[i * n + k]);
				if (v > best)
				{
					best = v;
					p = i;
				}
			}
			if (best == 0.0)
			{
				throw Error(Errc::singular_matrix, "zero pivot in column " + std::to_string(k));
			}
			if (p != k)
			{
				std::swap_ranges(lu.begin() + k * n, lu.begin() + (k + 1) * n, lu.begin() + p * n);
				std::swap(perm[k], perm[p]);
			}
			pivots.push_back(best);
			double const pivot = lu[k * n + k];
			for (std::size_t i = k + 1; i < n; ++i)
			{
				double const factor = lu[i * n + k] / pivot;
				lu[i * n + k] = factor;
				if (factor == 0.0)
				{
					continue;
				}
				for (std::size_t j = k + 1; j < n; ++j)
				{
					lu[i * n + j] -= factor * lu[k * n + j];
				}
			}
		}
	}

	std::vector<double> solve(std::span<double const> b) const
	{
		std::vector<double> x(n);
		for (std::size_t i = 0; i < n; ++i)
		{
			double sum = b[perm[i]];
			for (std::size_t j = 0; j < i; ++j)
			{
				sum -= lu[i * n + j] * x[j];
			}
			x[i] = sum;
		}
		for (std::size_t i = n; i-- > 0;)
		{
			double sum = x[i];
			for (std::size_t j = i + 1; j < n; ++j)
			{
				sum -= lu[i * n + j] * x[j];
			}
			x[i] = sum / lu[i * n + i];
		}
		return x;
	}

	/// ||A^-1||_inf from n unit solves.
	double inverse_inf_norm() const
	{
		std::vector<double> row_sums(n, 0.0);
		std::vector<double> unit(n, 0.0);
		for (std::size_t j = 0; j < n; ++j)
		{
			unit[j] = 1.0;
			auto const column = solve(unit);
			unit[j] = 0.0;
			for (std::size_t i = 0; i < n; ++i)
			{
				row_sums[i] += std::abs(column[i]);
			}
		}
		return *std::max_element(row_sums.begin(), row_sums.end());
	}
};

/// Householder QR least squares for a row-major m x n design (m >= n).
inline std::vector<double> householder_least_squares(std::vector<double> a, std::size_t m, std::size_t n, std::vector<double> y)
{
	if (m < n || a.size() != m * n || y.size() != m)
	{
		throw Error(Errc::invalid_input, "least-squares design must be m x n with m >= n");
	}
	std::vector<double> diag(n);
	for (std::size_t k = 0; k < n; ++k)
	{
		double norm = 0.0;
		for (std::size_t i = k; i < m; ++i)
		{
			norm = std::hypot(norm, a[i * n + k]);
		}
		if (norm == 0.0)
		{
			throw Error(Errc::singular_matrix, "rank-deficient column " + std::to_string(k));
		}
		double const alpha = a[k * n + k] > 0.0 ? -norm : norm;
		// v = x - alpha e1, stored in column k below and on the diagonal
		a[k * n + k] -= alpha;
		double vnorm2 = 0.0;
		for (std::size_t i = k; i < m; ++i)
		{
			vnorm2 += a[i * n + k] * a[i * n + k];
		}
		for (std::size_t j = k + 1; j < n; ++j)
		{
			double dot = 0.0;
			for (std::size_t i = k; i < m; ++i)
			{
				dot += a[i * n + k] * a[i * n + j];
			}
			double const s = 2.0 * dot / vnorm2;
			for (std::size_t i = k; i < m; ++i)
			{
				a[i * n + j] -= s * a[i * n + k];
			}
		}
		double dot = 0.0;
		for (std::size_t i = k; i < m; ++i)
		{
			dot += a[i * n + k] * y[i];
		}
		double const s = 2.0 * dot / vnorm2;
		for (std::size_t i = k; i < m; ++i)
		{
			y[i] -= s * a[i * n + k];
		}
		diag[k] = alpha;
	}
	std::vector<double> x(n);
	for (std::size_t i = n; i-- > 0;)
	{
		double sum = y[i];
		for (std::size_t j = i + 1; j < n; ++j)
		{
			sum -= a[i * n + j] * x[j];
		}
		x[i] = sum / diag[i];
	}
	return x;
}

} // namespace detail

/// Solves a square system by Householder QR.
inline std::vector<double> solve_orthogonal(DenseSystem const& sys)
{
	sys.validate();
	return detail::householder_least_squares(sys.matrix, sys.n, sys.n, sys.rhs);
}

/// Least-squares solution of an overdetermined row-major m x n design.
inline std::vector<double> least_squares_orthogonal(std::span<double const> design, std::size_t rows, std::size_t cols, std::span<double const> y)
{
	return detail::householder_least_squares({design.begin(), design.end()}, rows, cols, {y.begin(), y.end()});
}

/// Gaussian elimination with partial pivoting. When the condition estimate
/// exceeds kConditionFallback the answer comes from solve_orthogonal instead.
inline DenseSolution solve_dense(DenseSystem const& sys)
{
	sys.validate();
	detail::LuFactors const lu(sys);

	DenseSolution out;
	out.diagnostics.pivot_magnitudes = lu.pivots;
	out.diagnostics.condition_estimate = std::max(1.0, detail::inf_norm(sys) * lu.inverse_inf_norm());
	if (out.diagnostics.condition_estimate > kConditionFallback)
	{
		out.x = solve_orthogonal(sys);
		out.diagnostics.method = SolveMethod::orthogonal;
	}
	else
	{
		out.x = lu.solve(sys.rhs);
	}
	return out;
}

struct LineFit
{
	double slope;
	double intercept;
	double r2;
};

/// Ordinary least-squares line y = slope * x + intercept. A response with
/// zero variance reports r2 = 0.
inline LineFit ols_line(std::span<double const> x, std::span<double const> y)
{
	if (x.size() != y.size())
	{
		throw Error(Errc::invalid_input, "x and y lengths differ");
	}
	if (x.size() < 2)
	{
		throw Error(Errc::insufficient_data, "line fit needs at least two points");
	}
	for (std::size_t i = 0; i < x.size(); ++i)
	{
		if (!std::isfinite(x[i]) || !std::isfinite(y[i]))
		{
			throw Error(Errc::invalid_input, "line fit inputs must be finite");
		}
	}
	if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); }))
	{
		throw Error(Errc::degenerate_abscissa, "all abscissae are equal");
	}

	double const n = static_cast<double>(x.size());
	double const mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
	double const my = std::accumulate(y.begin(), y.end(), 0.0) / n;
	double sxx = 0.0;
	double sxy = 0.0;
	double syy = 0.0;
	for (std::size_t i = 0; i < x.size(); ++i)
	{
		double const dx = x[i] - mx;
		double const dy = y[i] - my;
		sxx += dx * dx;
		sxy += dx * dy;
		syy += dy * dy;
	}

	LineFit fit{};
	fit.slope = sxy / sxx;
	fit.intercept = my - fit.slope * mx;
	double sse = 0.0;
	for (std::size_t i = 0; i < x.size(); ++i)
	{
		double const r = y[i] - (fit.slope * x[i] + fit.intercept);
		sse += r * r;
	}
	fit.r2 = syy > 0.0 ? 1.0 - sse / syy : 0.0;
	return fit;
}

namespace detail {

/// Normal equations for a degree-p polynomial, unknowns ordered from the
/// highest power down:
///   sum_i d_i^(2p - r - c) in row r, column c; sum_i y_i d_i^(p - r) on the right.
inline DenseSystem moment_system(std::span<double const> d, std::span<double const> y, std::size_t degree, double scale = 1.0)
{
	std::size_t const terms = degree + 1;
	std::vector<double> power_sums(2 * degree + 1, 0.0);
	std::vector<double> weighted(terms, 0.0);
	for (std::size_t i = 0; i < d.size(); ++i)
	{
		double const t = d[i] / scale;
		double p = 1.0;
		for (std::size_t k = 0; k <= 2 * degree; ++k)
		{
			power_sums[k] += p;
			if (k <= degree)
			{
				weighted[k] += y[i] * p;
			}
			p *= t;
		}
	}
	DenseSystem sys(terms);
	for (std::size_t r = 0; r < terms; ++r)
	{
		for (std::size_t c = 0; c < terms; ++c)
		{
			sys.at(r, c) = power_sums[2 * degree - r - c];
		}
		sys.rhs[r] = weighted[degree - r];
	}
	return sys;
}

struct PolyFit
{
	std::vector<double> coefficients;
	SolveDiagnostics diagnostics;
};

inline PolyFit polyfit_normal_equations(std::span<double const> d, std::span<double const> y, std::size_t degree)
{
	if (d.size() != y.size())
	{
		throw Error(Errc::invalid_input, "distance and value lengths differ");
	}
	for (std::size_t i = 0; i < d.size(); ++i)
	{
		if (!std::isfinite(d[i]) || !std::isfinite(y[i]))
		{
			throw Error(Errc::invalid_input, "polynomial fit inputs must be finite");
		}
	}
	std::set<double> const distinct(d.begin(), d.end());
	if (distinct.size() < degree + 2)
	{
		throw Error(Errc::insufficient_data,
		            "need at least " + std::to_string(degree + 2) + " distinct distances, got " + std::to_string(distinct.size()));
	}

	auto raw = solve_dense(moment_system(d, y, degree));
	if (raw.diagnostics.condition_estimate <= kConditionFallback)
	{
		return {std::move(raw.x), std::move(raw.diagnostics)};
	}

	double scale = 0.0;
	for (double v : d)
	{
		scale = std::max(scale, std::abs(v));
	}
	auto scaled = solve_dense(moment_system(d, y, degree, scale));
	scaled.diagnostics.scaled = true;
	// coefficient r multiplies d^(degree - r)
	for (std::size_t r = 0; r <= degree; ++r)
	{
		scaled.x[r] /= std::pow(scale, static_cast<double>(degree - r));
	}
	return {std::move(scaled.x), std::move(scaled.diagnostics)};
}

} // namespace detail

struct QuarticFit
{
	/// {a, b, c, e, f}, highest power first.
	std::array<double, 5> coefficients;
	SolveDiagnostics diagnostics;
};

/// Least-squares quartic through (d_i, y_i) from the 5 x 5 moment matrix
/// built on raw powers d^8 ... d^0. Needs six distinct distances.
inline QuarticFit polyfit_quartic(std::span<double const> d, std::span<double const> y)
{
	auto fit = detail::polyfit_normal_equations(d, y, 4);
	QuarticFit out{};
	std::copy(fit.coefficients.begin(), fit.coefficients.end(), out.coefficients.begin());
	out.diagnostics = std::move(fit.diagnostics);
	return out;
}

inline double eval_quartic(std::array<double, 5> const& coef, double d)
{
	return (((coef[0] * d + coef[1]) * d + coef[2]) * d + coef[3]) * d + coef[4];
}

/// sum_i r_i d_i^k for k = 4, 3, 2, 1, 0 with r_i = y_i - q(d_i). These are
/// the first-order optimality conditions of the quartic fit, up to a factor -2.
inline std::array<double, 5> quartic_stationarity(std::span<double const> d, std::span<double const> y, std::array<double, 5> const& coef)
{
	std::array<double, 5> sums{};
	for (std::size_t i = 0; i < d.size(); ++i)
	{
		double const r = y[i] - eval_quartic(coef, d[i]);
		double p = 1.0;
		for (std::size_t k = 5; k-- > 0;)
		{
			sums[k] += r * p;
			p *= d[i];
		}
	}
	return sums;
}

} // namespace shadowfit

#endif // SHADOWFIT_NUMERICS_HPP
