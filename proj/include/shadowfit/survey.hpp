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
/// Raw RSSI survey container.

#ifndef SHADOWFIT_SURVEY_HPP
#define SHADOWFIT_SURVEY_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "shadowfit/error.hpp"
#include "shadowfit/format.hpp"

namespace shadowfit {

struct SurveyRow
{
	double distance;
	std::vector<double> samples;

	bool operator==(SurveyRow const&) const = default;
};

/// Per-distance RSSI readings (dBm) from one site. Each distance appears in
/// exactly one row; add() merges repeated distances into the existing row.
struct RssiSurvey
{
	std::string site;
	std::vector<SurveyRow> rows;
	std::optional<std::string> frequency;
	std::optional<std::string> notes;

	void add(double distance, double sample)
	{
		auto it = std::find_if(rows.begin(), rows.end(), [&](SurveyRow const& r) { return r.distance == distance; });
		if (it == rows.end())
		{
			rows.push_back({distance, {sample}});
		}
		else
		{
			it->samples.push_back(sample);
		}
	}

	std::size_t sample_count() const
	{
		std::size_t total = 0;
		for (auto const& row : rows)
		{
			total += row.samples.size();
		}
		return total;
	}

	void validate() const
	{
		for (std::size_t i = 0; i < rows.size(); ++i)
		{
			auto const& row = rows[i];
			if (!(row.distance > 0.0) || !std::isfinite(row.distance))
			{
				throw Error(Errc::validation, "survey distance must be positive, got " + format_number(row.distance));
			}
			if (row.samples.empty())
			{
				throw Error(Errc::validation, "survey row at " + format_number(row.distance) + " m has no samples");
			}
			if (!std::all_of(row.samples.begin(), row.samples.end(), [](double v) { return std::isfinite(v); }))
			{
				throw Error(Errc::validation, "survey samples must be finite");
			}
			for (std::size_t j = 0; j < i; ++j)
			{
				if (rows[j].distance == row.distance)
				{
					throw Error(Errc::validation, "duplicate survey distance " + format_number(row.distance));
				}
			}
		}
	}

	bool operator==(RssiSurvey const&) const = default;
};

} // namespace shadowfit

#endif // SHADOWFIT_SURVEY_HPP
