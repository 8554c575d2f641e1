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

// Independent reference computations for the test suites. Nothing here
// calls into the library's numerical code.

#ifndef SHADOWFIT_TESTS_ORACLES_HPP
#define SHADOWFIT_TESTS_ORACLES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<long double>>;

/// Gauss-Jordan elimination with full pivoting in long double.
inline std::vector<double> full_pivot_solve(std::vector<std::vector<double>> const& a_in, std::vector<double> const& b_in)
{
	std::size_t const n = a_in.size();
	Matrix a(n, std::vector<long double>(n + 1));
	for (std::size_t i = 0; i < n; ++i)
	{
		for (std::size_t j = 0; j < n; ++j)
		{
			a[i][j] = a_in[i][j];
		}
		a[i][n] = b_in[i];
	}
	std::vector<std::size_t> col(n);
	for (std::size_t j = 0; j < n; ++j)
	{
		col[j] = j;
	}
	for (std::size_t k = 0; k < n; ++k)
	{
		std::size_t pr = k;
		std::size_t pc = k;
		long double best = 0;
		for (std::size_t i = k; i < n; ++i)
		{
			for (std::size_t j = k; j < n; ++j)
			{
				if (std::fabs(a[i][j]) > best)
				{
					best = std::fabs(a[i][j]);
					pr = i;
					pc = j;
				}
			}
		}
		std::swap(a[k], a[pr]);
		for (auto& row : a)
		{
			std::swap(row[k], row[pc]);
		}
		std::swap(col[k], col[pc]);
		for (std::size_t i = 0; i < n; ++i)
		{
			if (i == k)
			{
				continue;
			}
			long double const f = a[i][k] / a[k][k];
			for (std::size_t j = k; j <= n; ++j)
			{
				a[i][j] -= f * a[k][j];
			}
		}
	}
	std::vector<double> x(n);
	for (std::size_t k = 0; k < n; ++k)
	{
		x[col[k]] = static_cast<double>(a[k][n] / a[k][k]);
	}
	return x;
}

/// Textbook slope/intercept: (n Sxy - Sx Sy) / (n Sxx - Sx^2), in long double.
struct Line
{
	double slope;
	double intercept;
};

inline Line ols(std::vector<double> const& x, std::vector<double> const& y)
{
	long double n = static_cast<long double>(x.size());
	long double sx = 0, sy = 0, sxx = 0, sxy = 0;
	for (std::size_t i = 0; i < x.size(); ++i)
	{
		sx += x[i];
		sy += y[i];
		sxx += static_cast<long double>(x[i]) * x[i];
		sxy += static_cast<long double>(x[i]) * y[i];
	}
	long double const slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
	return {static_cast<double>(slope), static_cast<double>((sy - slope * sx) / n)};
}

inline double pearson(std::vector<double> const& x, std::vector<double> const& y)
{
	long double n = static_cast<long double>(x.size());
	long double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
	for (std::size_t i = 0; i < x.size(); ++i)
	{
		sx += x[i];
		sy += y[i];
		sxx += static_cast<long double>(x[i]) * x[i];
		syy += static_cast<long double>(y[i]) * y[i];
		sxy += static_cast<long double>(x[i]) * y[i];
	}
	return static_cast<double>((n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy)));
}

/// Power-form quartic evaluation, coefficients highest power first.
inline double quartic(std::array<double, 5> const& k, double d)
{
	return k[0] * std::pow(d, 4) + k[1] * std::pow(d, 3) + k[2] * d * d + k[3] * d + k[4];
}

/// Composite Simpson's rule with `panels` (even) subintervals.
template <typename F>
double simpson(F f, double a, double b, std::size_t panels)
{
	double const h = (b - a) / static_cast<double>(panels);
	double sum = f(a) + f(b);
	for (std::size_t i = 1; i < panels; ++i)
	{
		sum += f(a + h * static_cast<double>(i)) * (i % 2 == 1 ? 4.0 : 2.0);
	}
	return sum * h / 3.0;
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(std::string_view bytes)
{
	std::uint64_t h = 0xcbf29ce484222325ull;
	for (unsigned char c : bytes)
	{
		h ^= c;
		h *= 0x100000001b3ull;
	}
	return h;
}

} // namespace oracle

#endif // SHADOWFIT_TESTS_ORACLES_HPP
