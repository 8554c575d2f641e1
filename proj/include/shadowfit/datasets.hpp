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
/// Built-in survey summaries from an underground coal-mine measurement
/// campaign at 2.4 GHz (IEEE 802.15.4 radios, 1 m steps out to 20 m, 20
/// averaged RSSI readings per position), plus the range-test distances
/// observed at three sites.

#ifndef SHADOWFIT_DATASETS_HPP
#define SHADOWFIT_DATASETS_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shadowfit/error.hpp"
#include "shadowfit/estimation.hpp"

namespace shadowfit {

struct RangeTest
{
	double min_m;
	double max_m;
};

/// Values reported by the campaign's authors for the same data, kept for
/// side-by-side comparison.
struct PublishedFit
{
	double eta;
	std::array<double, 5> sigma_coefficients;
	double sigma_r2;
	double sigma_rmse;
};

struct DatasetRecord
{
	std::string name;
	std::vector<DistanceStats> stats;
	std::optional<RangeTest> range_test;
	std::string provenance;
	std::optional<PublishedFit> published;
};

namespace detail {

inline std::vector<DistanceStats> table_rows(std::initializer_list<std::array<double, 4>> rows)
{
	std::vector<DistanceStats> out;
	for (auto const& r : rows)
	{
		out.push_back({r[0], r[1], r[2], 20, r[3]});
	}
	return out;
}

inline std::vector<DatasetRecord> const& dataset_registry()
{
	static std::vector<DatasetRecord> const registry = [] {
		std::vector<DatasetRecord> all;

		all.push_back({
		    "longwall-face",
		    table_rows({
		        {1, -51.65, 0.48936, 100},
		        {2, -57.65, 2.00722, 100},
		        {3, -71.5, 4.54799, 96.59},
		        {4, -69.8, 3.67924, 96.76},
		        {5, -73.95, 5.78996, 96.29},
		        {6, -76.1, 4.93004, 95.83},
		        {7, -76.85, 5.83343, 95.7},
		        {8, -78.45, 6.88665, 95.07},
		        {9, -80.25, 6.04261, 95.08},
		        {10, -76.55, 6.60522, 95.45},
		        {11, -76.8, 5.94491, 95.65},
		        {12, -81.15, 4.56828, 93.92},
		        {13, -80.95, 3.64872, 93.89},
		        {14, -81.85, 4.22119, 93.9},
		        {15, -79.35, 3.54334, 94.2},
		        {16, -80.95, 4.20443, 93.77},
		        {17, -82.6, 4.87097, 92.71},
		        {18, -81.6, 3.93901, 93.85},
		        {19, -84.15, 4.51051, 90.05},
		        {20, -86.85, 4.88041, 86.2},
		    }),
		    RangeTest{40, 45},
		    "Longwall face of a coal mine with shearer, powered roof supports and face conveyor; "
		    "static, line-of-sight readings. Mean RSSI (dBm), sample SD and packet received rate "
		    "per 1 m position, 20 readings each.",
		    PublishedFit{2.14, {2.626e-6, 6.176e-3, -0.2276, 2.403, -1.721}, 0.8332, 0.6958},
		});

		all.push_back({
		    "gateroad-conveyor",
		    table_rows({
		        {1, -54.2857, 3.48056, 99.37},
		        {2, -60.0952, 1.92106, 99.3},
		        {3, -68.5714, 7.59402, 95.73},
		        {4, -67.0476, 7.89087, 95.22},
		        {5, -67, 7.75887, 96.19},
		        {6, -73, 4.12311, 96.04},
		        {7, -73.6667, 6.5904, 95.98},
		        {8, -70.6191, 5.45414, 96.53},
		        {9, -73.1905, 6.14261, 95.9},
		        {10, -68.2381, 5.76052, 96.3},
		        {11, -66.1905, 4.44491, 97.24},
		        {12, -69.5714, 3.35517, 96.83},
		        {13, -69, 3.6606, 96.89},
		        {14, -75, 5.12119, 95.5},
		        {15, -75.3333, 4.23478, 95.81},
		        {16, -79.8095, 4.7394, 94},
		        {17, -75.5714, 3.99464, 95.14},
		        {18, -76.5714, 5.59081, 94.63},
		        {19, -74.5455, 5.41363, 94.99},
		        {20, -83, 5.54076, 92.8},
		    }),
		    RangeTest{60, 65},
		    "Gate-road beside a running belt conveyor; some fast fading from the moving belt. "
		    "Several means are multiples of 1/21 (e.g. -54.2857), which suggests 21 readings at "
		    "some positions; n is recorded as the stated 20.",
		    PublishedFit{1.568, {-6.685e-4, 0.3418e-1, -0.5813, 3.599, -0.4563}, 0.474, 1.281},
		});

		all.push_back({
		    "mine-car-pathway",
		    {},
		    RangeTest{75, 85},
		    "Inclined mine-car pathway; range test only, no RSSI survey.",
		    std::nullopt,
		});
		return all;
	}();
	return registry;
}

} // namespace detail

inline std::vector<std::string> dataset_names()
{
	std::vector<std::string> names;
	for (auto const& rec : detail::dataset_registry())
	{
		names.push_back(rec.name);
	}
	return names;
}

inline bool has_dataset(std::string_view name)
{
	for (auto const& rec : detail::dataset_registry())
	{
		if (rec.name == name)
		{
			return true;
		}
	}
	return false;
}

inline DatasetRecord const& embedded_dataset(std::string_view name)
{
	for (auto const& rec : detail::dataset_registry())
	{
		if (rec.name == name)
		{
			return rec;
		}
	}
	std::string available;
	for (auto const& n : dataset_names())
	{
		available += (available.empty() ? "" : ", ") + n;
	}
	throw Error(Errc::not_found, "no dataset named '" + std::string(name) + "' (available: " + available + ")");
}

} // namespace shadowfit

#endif // SHADOWFIT_DATASETS_HPP
