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
/// Synthetic RSSI surveys drawn from a calibrated shadowing model.
///
/// Every sample has its own counter in a Philox4x32-10 generator:
/// counter = (sample index, distance index), key = seed. The 128-bit output
/// is split into two 53-bit uniforms on (0, 1) and mapped to one standard
/// normal deviate with the cosine branch of the Box-Muller transform. A
/// sample therefore depends only on (seed, distance index, sample index),
/// so appending distances or samples never changes existing ones.

#ifndef SHADOWFIT_SIMULATION_HPP
#define SHADOWFIT_SIMULATION_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "shadowfit/domain.hpp"
#include "shadowfit/error.hpp"
#include "shadowfit/format.hpp"
#include "shadowfit/survey.hpp"

namespace shadowfit {

/// Counter-based generator (Salmon et al., SC'11), 10 rounds.
class Philox4x32
{
public:
	using Counter = std::array<std::uint32_t, 4>;
	using Key = std::array<std::uint32_t, 2>;

	static constexpr Counter generate(Counter ctr, Key key) noexcept
	{
		for (int round = 0; round < 10; ++round)
		{
			if (round > 0)
			{
				key[0] += kWeyl0;
				key[1] += kWeyl1;
			}
			ctr = single_round(ctr, key);
		}
		return ctr;
	}

private:
	static constexpr std::uint32_t kMul0 = 0xD2511F53u;
	static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
	static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
	static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

	static constexpr Counter single_round(Counter const& ctr, Key const& key) noexcept
	{
		std::uint64_t const p0 = std::uint64_t{kMul0} * ctr[0];
		std::uint64_t const p1 = std::uint64_t{kMul1} * ctr[2];
		auto const hi0 = static_cast<std::uint32_t>(p0 >> 32);
		auto const lo0 = static_cast<std::uint32_t>(p0);
		auto const hi1 = static_cast<std::uint32_t>(p1 >> 32);
		auto const lo1 = static_cast<std::uint32_t>(p1);
		return {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
	}
};

/// Standard normal deviate for one (seed, stream, index) triple.
inline double counter_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept
{
	Philox4x32::Counter const ctr{static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
	                              static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
	Philox4x32::Key const key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
	auto const out = Philox4x32::generate(ctr, key);

	auto to_unit = [](std::uint32_t hi, std::uint32_t lo) {
		std::uint64_t const bits = (std::uint64_t{hi} << 32 | lo) >> 11;
		return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
	};
	double const u1 = to_unit(out[0], out[1]);
	double const u2 = to_unit(out[2], out[3]);
	return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

struct SimulationSpec
{
	ShadowedPathLossModel model;
	std::vector<double> distances;
	std::size_t samples_per_distance = 20;
	std::uint64_t seed = 0;
	std::string site = "simulated";

	void validate() const
	{
		model.validate();
		if (samples_per_distance < 1)
		{
			throw Error(Errc::invalid_input, "samples_per_distance must be at least 1");
		}
		for (std::size_t i = 0; i < distances.size(); ++i)
		{
			if (!(distances[i] > 0.0) || !std::isfinite(distances[i]))
			{
				throw Error(Errc::invalid_input, "simulation distance must be positive, got " + format_number(distances[i]));
			}
			if (std::find(distances.begin(), distances.begin() + static_cast<std::ptrdiff_t>(i), distances[i]) != distances.begin() + static_cast<std::ptrdiff_t>(i))
			{
				throw Error(Errc::invalid_input, "duplicate simulation distance " + format_number(distances[i]));
			}
		}
	}
};

/// sample = predict_mean_rss(d) + sigma(d) * z, sigma clamped to its fitted
/// range and floored at 0.
inline RssiSurvey simulate_survey(SimulationSpec const& spec)
{
	spec.validate();
	RssiSurvey survey;
	survey.site = spec.site;
	survey.rows.reserve(spec.distances.size());
	for (std::size_t i = 0; i < spec.distances.size(); ++i)
	{
		double const d = spec.distances[i];
		double const mean = predict_mean_rss(spec.model, d);
		double const sigma = std::max(0.0, sigma_at(spec.model, d).value);
		SurveyRow row{d, {}};
		row.samples.reserve(spec.samples_per_distance);
		for (std::size_t j = 0; j < spec.samples_per_distance; ++j)
		{
			row.samples.push_back(mean + sigma * counter_normal(spec.seed, i, j));
		}
		survey.rows.push_back(std::move(row));
	}
	return survey;
}

} // namespace shadowfit

#endif // SHADOWFIT_SIMULATION_HPP
