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
/// Calibration of the shadowing model from survey statistics.
///
/// The pipeline is: per-distance statistics (mean and n-1 standard
/// deviation), an ordinary least-squares line of mean RSS against
/// 10 log10(d / d0) whose negated slope is the path-loss exponent, and a
/// quartic in distance for the shadowing standard deviation.

#ifndef SHADOWFIT_ESTIMATION_HPP
#define SHADOWFIT_ESTIMATION_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shadowfit/domain.hpp"
#include "shadowfit/error.hpp"
#include "shadowfit/format.hpp"
#include "shadowfit/numerics.hpp"
#include "shadowfit/survey.hpp"

namespace shadowfit {

/// Divisor that turns a residual into the 95 % "maximum error" scale.
inline constexpr double kResidualScale95 = 1.96;

/// One row of a survey summary: mean RSS, sample SD, count and optional
/// packet received rate in percent.
struct DistanceStats
{
	double distance = 0.0;
	double mean_rss = 0.0;
	double sd = 0.0;
	int n = 1;
	std::optional<double> prr;

	void validate() const
	{
		if (!(distance > 0.0) || !std::isfinite(distance))
		{
			throw Error(Errc::validation, "distance must be positive, got " + format_number(distance));
		}
		if (!std::isfinite(mean_rss))
		{
			throw Error(Errc::validation, "mean RSS must be finite");
		}
		if (!(sd >= 0.0) || !std::isfinite(sd))
		{
			throw Error(Errc::validation, "sd must be non-negative at " + format_number(distance) + " m");
		}
		if (n < 1)
		{
			throw Error(Errc::validation, "sample count must be at least 1 at " + format_number(distance) + " m");
		}
		if (prr && !(*prr >= 0.0 && *prr <= 100.0))
		{
			throw Error(Errc::validation, "prr must lie in [0, 100] at " + format_number(distance) + " m");
		}
	}

	bool operator==(DistanceStats const&) const = default;
};

enum class InterceptMode
{
	free,
	anchored
};

enum class SigmaTarget
{
	sample_sd,
	residual_y
};

struct GoodnessOfFit
{
	double r2 = 0.0;
	double rmse = 0.0;
	double sse = 0.0;
	int dfe = 1;
	/// sqrt(sse / n), reported alongside the dof-adjusted rmse.
	double rmse_unadjusted = 0.0;
};

/// Regression output for the exponent fit. Residuals are observed minus
/// fitted mean RSS (dB); this is the negative of the same residual in
/// path-loss space. y_values are the residuals divided by 1.96.
struct FitReport
{
	double eta = 0.0;
	double rss_d0 = 0.0;
	double d0 = 1.0;
	InterceptMode intercept_mode = InterceptMode::free;
	std::vector<double> distances;
	std::vector<double> residuals;
	std::vector<double> y_values;
	double r2 = 0.0;
	double rmse = 0.0;
	SolveDiagnostics diagnostics;
};

struct PathLossFit
{
	ShadowedPathLossModel model;
	FitReport report;
};

struct SigmaFit
{
	SigmaPolynomial polynomial;
	GoodnessOfFit goodness;
	SolveDiagnostics diagnostics;
	/// The values the quartic was fitted to.
	std::vector<double> targets;
	/// Normal-equation residuals sum_i r_i d_i^k, k = 4..0.
	std::array<double, 5> stationarity{};
};

struct PrrCorrelations
{
	double prr_sd;
	double prr_mean;
	std::size_t rows;
};

/// Mean and n-1 standard deviation per distance, ascending by distance.
/// Repeated distances are merged before the statistics are taken.
inline std::vector<DistanceStats> survey_stats(RssiSurvey const& survey)
{
	std::map<double, std::vector<double>> grouped;
	for (auto const& row : survey.rows)
	{
		if (!(row.distance > 0.0) || !std::isfinite(row.distance))
		{
			throw Error(Errc::validation, "survey distance must be positive, got " + format_number(row.distance));
		}
		auto& bucket = grouped[row.distance];
		bucket.insert(bucket.end(), row.samples.begin(), row.samples.end());
	}

	std::vector<DistanceStats> out;
	out.reserve(grouped.size());
	for (auto const& [distance, samples] : grouped)
	{
		if (samples.size() < 2)
		{
			throw Error(Errc::insufficient_samples,
			            "distance " + format_number(distance) + " m has " + std::to_string(samples.size()) + " sample(s), need at least 2");
		}
		double const n = static_cast<double>(samples.size());
		double sum = 0.0;
		for (double v : samples)
		{
			if (!std::isfinite(v))
			{
				throw Error(Errc::validation, "non-finite sample at " + format_number(distance) + " m");
			}
			sum += v;
		}
		double const mean = sum / n;
		double ss = 0.0;
		for (double v : samples)
		{
			ss += (v - mean) * (v - mean);
		}
		out.push_back({distance, mean, std::sqrt(ss / (n - 1.0)), static_cast<int>(samples.size()), std::nullopt});
	}
	return out;
}

/// sse, r2 = 1 - sse/sst and the dof-adjusted rmse = sqrt(sse / (n - p)).
/// A constant observed series gives r2 = 0.
inline GoodnessOfFit goodness_of_fit(std::span<double const> observed, std::span<double const> fitted, int n_params)
{
	if (observed.size() != fitted.size())
	{
		throw Error(Errc::invalid_input, "observed and fitted lengths differ");
	}
	if (n_params < 0 || observed.size() <= static_cast<std::size_t>(n_params))
	{
		throw Error(Errc::insufficient_dof,
		            std::to_string(observed.size()) + " observations cannot support " + std::to_string(n_params) + " parameters");
	}
	double const n = static_cast<double>(observed.size());
	double mean = 0.0;
	for (double v : observed)
	{
		mean += v;
	}
	mean /= n;
	double sse = 0.0;
	double sst = 0.0;
	for (std::size_t i = 0; i < observed.size(); ++i)
	{
		double const r = observed[i] - fitted[i];
		sse += r * r;
		sst += (observed[i] - mean) * (observed[i] - mean);
	}
	GoodnessOfFit g;
	g.sse = sse;
	g.dfe = static_cast<int>(observed.size()) - n_params;
	g.r2 = sst > 0.0 ? 1.0 - sse / sst : 0.0;
	g.rmse = std::sqrt(sse / g.dfe);
	g.rmse_unadjusted = std::sqrt(sse / n);
	return g;
}

namespace detail {

inline void check_stats(std::span<DistanceStats const> stats)
{
	for (auto const& row : stats)
	{
		row.validate();
	}
}

inline void require_distinct_distances(std::span<DistanceStats const> stats)
{
	if (std::all_of(stats.begin(), stats.end(), [&](DistanceStats const& s) { return s.distance == stats.front().distance; }))
	{
		throw Error(Errc::degenerate_abscissa, "all distances are equal");
	}
	std::vector<double> d;
	for (auto const& s : stats)
	{
		d.push_back(s.distance);
	}
	std::sort(d.begin(), d.end());
	if (std::adjacent_find(d.begin(), d.end()) != d.end())
	{
		throw Error(Errc::validation, "distances must be distinct; merge repeated distances first");
	}
}

} // namespace detail

/// Regresses mean RSS on 10 log10(d / d0); eta is the negated slope.
///
/// In free mode the intercept (rss_d0) is estimated. In anchored mode it is
/// pinned to the measured mean at the row nearest d0 (the shorter distance
/// on a tie) and only the slope is fitted.
inline PathLossFit fit_path_loss(std::span<DistanceStats const> stats, double d0 = 1.0, InterceptMode mode = InterceptMode::free)
{
	if (!(d0 > 0.0) || !std::isfinite(d0))
	{
		throw Error(Errc::invalid_input, "d0 must be positive");
	}
	if (stats.size() < 3)
	{
		throw Error(Errc::insufficient_data, "exponent fit needs at least 3 rows, got " + std::to_string(stats.size()));
	}
	detail::check_stats(stats);
	detail::require_distinct_distances(stats);

	std::vector<double> x;
	std::vector<double> y;
	for (auto const& s : stats)
	{
		x.push_back(10.0 * std::log10(s.distance / d0));
		y.push_back(s.mean_rss);
	}

	PathLossFit out;
	auto& report = out.report;
	report.d0 = d0;
	report.intercept_mode = mode;

	double slope = 0.0;
	double intercept = 0.0;
	DenseSystem normal;
	if (mode == InterceptMode::free)
	{
		auto const line = ols_line(x, y);
		slope = line.slope;
		intercept = line.intercept;
		double sx = 0.0;
		double sxx = 0.0;
		for (double v : x)
		{
			sx += v;
			sxx += v * v;
		}
		normal = DenseSystem({{sxx, sx}, {sx, static_cast<double>(x.size())}}, {0.0, 0.0});
	}
	else
	{
		std::size_t nearest = 0;
		for (std::size_t i = 1; i < stats.size(); ++i)
		{
			double const gap = std::abs(stats[i].distance - d0);
			double const best = std::abs(stats[nearest].distance - d0);
			if (gap < best || (gap == best && stats[i].distance < stats[nearest].distance))
			{
				nearest = i;
			}
		}
		intercept = stats[nearest].mean_rss;
		double sxy = 0.0;
		double sxx = 0.0;
		for (std::size_t i = 0; i < x.size(); ++i)
		{
			sxy += x[i] * (y[i] - intercept);
			sxx += x[i] * x[i];
		}
		if (sxx == 0.0)
		{
			throw Error(Errc::degenerate_abscissa, "every distance equals d0");
		}
		slope = sxy / sxx;
		normal = DenseSystem({{sxx}}, {0.0});
	}
	report.diagnostics = solve_dense(normal).diagnostics;

	report.eta = -slope;
	report.rss_d0 = intercept;
	std::vector<double> fitted;
	for (std::size_t i = 0; i < x.size(); ++i)
	{
		fitted.push_back(intercept + slope * x[i]);
		report.distances.push_back(stats[i].distance);
		report.residuals.push_back(y[i] - fitted.back());
		report.y_values.push_back(report.residuals.back() / kResidualScale95);
	}
	auto const g = goodness_of_fit(y, fitted, mode == InterceptMode::free ? 2 : 1);
	report.r2 = g.r2;
	report.rmse = g.rmse;

	out.model.d0 = d0;
	out.model.rss_d0 = intercept;
	out.model.eta = report.eta;
	return out;
}

/// (mean_rss - predicted) per row, divided by 1.96 when `scaled`.
inline std::vector<double> residual_y(std::span<DistanceStats const> stats, ShadowedPathLossModel const& model, bool scaled = true)
{
	model.validate();
	std::vector<double> out;
	out.reserve(stats.size());
	for (auto const& s : stats)
	{
		s.validate();
		double const r = s.mean_rss - predict_mean_rss(model, s.distance);
		out.push_back(scaled ? r / kResidualScale95 : r);
	}
	return out;
}

/// Fits the shadowing-SD quartic. With SigmaTarget::residual_y the targets
/// come from `path_model`, or from a free-intercept fit at d0 = 1 m when no
/// model is given.
inline SigmaFit fit_sigma_polynomial(std::span<DistanceStats const> stats,
                                     SigmaTarget target = SigmaTarget::sample_sd,
                                     std::optional<ShadowedPathLossModel> const& path_model = std::nullopt)
{
	detail::check_stats(stats);
	SigmaFit out;
	std::vector<double> d;
	for (auto const& s : stats)
	{
		d.push_back(s.distance);
	}
	if (target == SigmaTarget::sample_sd)
	{
		for (auto const& s : stats)
		{
			out.targets.push_back(s.sd);
		}
	}
	else
	{
		auto const model = path_model ? *path_model : fit_path_loss(stats).model;
		out.targets = residual_y(stats, model, true);
	}

	auto const fit = polyfit_quartic(d, out.targets);
	auto const& k = fit.coefficients;
	auto const [lo, hi] = std::minmax_element(d.begin(), d.end());
	out.polynomial = SigmaPolynomial{k[0], k[1], k[2], k[3], k[4], *lo, *hi};
	out.diagnostics = fit.diagnostics;
	out.stationarity = quartic_stationarity(d, out.targets, k);

	std::vector<double> fitted;
	for (double v : d)
	{
		fitted.push_back(eval_quartic(k, v));
	}
	out.goodness = goodness_of_fit(out.targets, fitted, 5);
	return out;
}

namespace detail {

inline double pearson(std::span<double const> x, std::span<double const> y, char const* x_name, char const* y_name)
{
	double const n = static_cast<double>(x.size());
	double mx = 0.0;
	double my = 0.0;
	for (std::size_t i = 0; i < x.size(); ++i)
	{
		mx += x[i];
		my += y[i];
	}
	mx /= n;
	my /= n;
	double sxx = 0.0;
	double syy = 0.0;
	double sxy = 0.0;
	for (std::size_t i = 0; i < x.size(); ++i)
	{
		sxx += (x[i] - mx) * (x[i] - mx);
		syy += (y[i] - my) * (y[i] - my);
		sxy += (x[i] - mx) * (y[i] - my);
	}
	if (sxx == 0.0)
	{
		throw Error(Errc::undefined_correlation, std::string("column '") + x_name + "' is constant");
	}
	if (syy == 0.0)
	{
		throw Error(Errc::undefined_correlation, std::string("column '") + y_name + "' is constant");
	}
	return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

} // namespace detail

/// Pearson correlation of PRR with SD and with mean RSS over the rows that
/// carry a PRR value.
inline PrrCorrelations prr_correlations(std::span<DistanceStats const> stats)
{
	std::vector<double> prr;
	std::vector<double> sd;
	std::vector<double> mean;
	for (auto const& s : stats)
	{
		s.validate();
		if (s.prr)
		{
			prr.push_back(*s.prr);
			sd.push_back(s.sd);
			mean.push_back(s.mean_rss);
		}
	}
	if (prr.size() < 3)
	{
		throw Error(Errc::insufficient_data, "PRR correlation needs at least 3 rows with PRR, got " + std::to_string(prr.size()));
	}
	return {detail::pearson(prr, sd, "prr", "sd"), detail::pearson(prr, mean, "prr", "mean_rss"), prr.size()};
}

} // namespace shadowfit

#endif // SHADOWFIT_ESTIMATION_HPP
