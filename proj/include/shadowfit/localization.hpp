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
/// Distance estimation and link planning from a calibrated model.

#ifndef SHADOWFIT_LOCALIZATION_HPP
#define SHADOWFIT_LOCALIZATION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <variant>

#include <boost/math/distributions/normal.hpp>

#include "shadowfit/domain.hpp"
#include "shadowfit/error.hpp"
#include "shadowfit/format.hpp"

namespace shadowfit {

/// Upper end of the range search (m).
inline constexpr double kMaxSearchRange = 1e6;
/// Bisection stops once the bracket is narrower than this (m).
inline constexpr double kRangeTolerance = 0.005;

struct LocalizationEstimate
{
	double d_hat;
	double d_lo;
	double d_hi;
	double level;
	double z;
	double sigma_used;
	bool clamped;
};

struct LinkPlan
{
	double max_range;
	double margin_db;
	double outage_z;
	double sensitivity;
	/// sigma was evaluated outside the polynomial's fitted distance range.
	bool sigma_clamped;
	/// max_range lies beyond the distances the model was calibrated on.
	bool extrapolated;
	/// The link budget still held at kMaxSearchRange.
	bool unbounded;
};

namespace detail {

inline void require_invertible(ShadowedPathLossModel const& model)
{
	model.validate();
	if (!(model.eta > 0.0))
	{
		throw Error(Errc::non_invertible_model, "eta must be positive to invert the model, got " + format_number(model.eta));
	}
}

/// Shadowing SD used for margins; a quartic that dips below zero counts as 0.
inline SigmaValue margin_sigma(ShadowedPathLossModel const& model, double d)
{
	auto s = sigma_at(model, d);
	s.value = std::max(0.0, s.value);
	return s;
}

} // namespace detail

/// d = d0 * 10^((rss_d0 - rss) / (10 eta)), the inverse of predict_mean_rss.
inline double estimate_distance(ShadowedPathLossModel const& model, double rss)
{
	detail::require_invertible(model);
	detail::require_finite(rss, "rss");
	return model.d0 * std::pow(10.0, (model.rss_d0 - rss) / (10.0 * model.eta));
}

/// Two-sided standard-normal quantile for a central probability `level`.
inline double two_sided_z(double level)
{
	if (!(level > 0.0 && level < 1.0))
	{
		throw Error(Errc::invalid_input, "confidence level must lie in (0, 1), got " + format_number(level));
	}
	boost::math::normal_distribution<double> const standard;
	return boost::math::quantile(standard, 0.5 + 0.5 * level);
}

/// Point estimate plus the interval obtained by shifting the reading by
/// +/- z sigma, with sigma taken at the point estimate.
inline LocalizationEstimate confidence_interval(ShadowedPathLossModel const& model, double rss, double level)
{
	double const z = two_sided_z(level);
	double const d_hat = estimate_distance(model, rss);
	auto const sigma = detail::margin_sigma(model, d_hat);
	double const shift = z * sigma.value;

	LocalizationEstimate est{};
	est.d_hat = d_hat;
	// a stronger reading means a shorter distance
	est.d_lo = estimate_distance(model, rss + shift);
	est.d_hi = estimate_distance(model, rss - shift);
	est.level = level;
	est.z = z;
	est.sigma_used = sigma.value;
	est.clamped = sigma.clamped;
	return est;
}

/// Largest distance at which the mean RSS minus an outage margin of
/// outage_z * sigma(d) still clears the receiver sensitivity.
///
/// A log-spaced scan over [d0, kMaxSearchRange] brackets the last crossing
/// and bisection refines it, so sigma shapes that are not monotone are
/// handled the same way as constant ones.
inline LinkPlan max_range(ShadowedPathLossModel const& model, LinkConstants const& constants, double outage_z)
{
	detail::require_invertible(model);
	constants.validate();
	if (!(outage_z >= 0.0) || !std::isfinite(outage_z))
	{
		throw Error(Errc::invalid_input, "outage z must be finite and non-negative");
	}
	double const sensitivity = constants.receiver_sensitivity_dbm;
	if (sensitivity >= model.rss_d0)
	{
		throw Error(Errc::no_coverage,
		            "sensitivity " + format_number(sensitivity) + " dBm is not below rss_d0 " + format_number(model.rss_d0) + " dBm");
	}
	if (!(model.d0 < kMaxSearchRange))
	{
		throw Error(Errc::invalid_input, "d0 exceeds the range search limit");
	}

	auto headroom = [&](double d) { return predict_mean_rss(model, d) - outage_z * detail::margin_sigma(model, d).value - sensitivity; };

	if (headroom(model.d0) < 0.0)
	{
		throw Error(Errc::no_coverage, "outage margin exceeds the link budget already at d0");
	}

	constexpr std::size_t kScanPoints = 4096;
	double const log_lo = std::log10(model.d0);
	double const log_hi = std::log10(kMaxSearchRange);
	auto grid = [&](std::size_t i) {
		if (i == 0)
		{
			return model.d0;
		}
		if (i == kScanPoints - 1)
		{
			return kMaxSearchRange;
		}
		return std::pow(10.0, log_lo + (log_hi - log_lo) * static_cast<double>(i) / static_cast<double>(kScanPoints - 1));
	};

	std::size_t last_ok = 0;
	for (std::size_t i = 1; i < kScanPoints; ++i)
	{
		if (headroom(grid(i)) >= 0.0)
		{
			last_ok = i;
		}
	}

	LinkPlan plan{};
	plan.outage_z = outage_z;
	plan.sensitivity = sensitivity;
	if (last_ok == kScanPoints - 1)
	{
		plan.max_range = kMaxSearchRange;
		plan.unbounded = true;
	}
	else
	{
		double lo = grid(last_ok);
		double hi = grid(last_ok + 1);
		while (hi - lo > kRangeTolerance)
		{
			double const mid = 0.5 * (lo + hi);
			if (headroom(mid) >= 0.0)
			{
				lo = mid;
			}
			else
			{
				hi = mid;
			}
		}
		plan.max_range = lo;
	}

	auto const sigma = detail::margin_sigma(model, plan.max_range);
	plan.margin_db = outage_z * sigma.value;
	plan.sigma_clamped = sigma.clamped;
	if (auto const* poly = std::get_if<SigmaPolynomial>(&model.sigma))
	{
		plan.extrapolated = plan.max_range > poly->d_max;
	}
	return plan;
}

} // namespace shadowfit

#endif // SHADOWFIT_LOCALIZATION_HPP
