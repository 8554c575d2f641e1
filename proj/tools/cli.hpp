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
/// Command-line front end. Every command builds its complete output in
/// memory and only prints it once nothing can fail any more, so an error
/// never leaves a partial JSON or CSV document on stdout.
///
/// Exit codes: 0 success, 1 bad input or data, 2 numerical failure.

#ifndef SHADOWFIT_TOOLS_CLI_HPP
#define SHADOWFIT_TOOLS_CLI_HPP

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "shadowfit/shadowfit.hpp"

namespace shadowfit::cli {

enum class OutputFormat
{
	text,
	json,
	csv
};

struct RunOptions
{
	/// ANSI colour on NOTE / WARNING lines.
	bool color = false;
};

namespace detail {

using json = nlohmann::ordered_json;

/// |computed - published| above which a NOTE is printed for exponent fits.
inline constexpr double kPublishedEtaNoteThreshold = 0.05;

struct Outcome
{
	std::string stdout_text;
	std::vector<std::pair<std::string, std::string>> files;
};

struct Source
{
	std::string label;
	std::vector<DistanceStats> stats;
	DatasetRecord const* record = nullptr;
};

inline std::string read_file(std::string const& path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
	{
		throw Error(Errc::io, "cannot open '" + path + "'");
	}
	std::ostringstream buf;
	buf << in.rdbuf();
	return buf.str();
}

inline void write_file(std::string const& path, std::string const& content)
{
	std::ofstream out(path, std::ios::binary | std::ios::trunc);
	if (!out || !(out << content) || !out.flush())
	{
		throw Error(Errc::io, "cannot write '" + path + "'");
	}
}

inline bool looks_like_survey(std::string_view bytes)
{
	for (auto const& line : shadowfit::detail::split_lines(bytes))
	{
		if (!line.text.starts_with('#'))
		{
			return line.text == kSurveyHeader;
		}
	}
	return false;
}

/// An embedded dataset name, or a path to a stats CSV or survey CSV.
inline Source resolve_source(std::string const& arg)
{
	Source src;
	src.label = arg;
	if (has_dataset(arg))
	{
		src.record = &embedded_dataset(arg);
		if (src.record->stats.empty())
		{
			throw Error(Errc::insufficient_data, "dataset '" + arg + "' has range-test data only");
		}
		src.stats = src.record->stats;
		return src;
	}
	auto const bytes = read_file(arg);
	src.stats = looks_like_survey(bytes) ? survey_stats(load_survey_csv(bytes)) : load_stats_csv(bytes);
	return src;
}

inline ShadowedPathLossModel load_model(std::string const& path)
{
	return model_from_json(read_file(path));
}

inline std::string sci(double v)
{
	std::ostringstream os;
	os << std::scientific << std::setprecision(6) << v;
	return os.str();
}

inline std::string fixed(double v, int precision = 4) { return format_fixed(v, precision); }

inline std::string to_string(InterceptMode m) { return m == InterceptMode::free ? "free" : "anchored"; }
inline std::string to_string(SigmaTarget t) { return t == SigmaTarget::sample_sd ? "sample_sd" : "residual_y"; }

class TextReport
{
public:
	explicit TextReport(bool color) : color_(color) {}

	void field(std::string const& name, std::string const& value)
	{
		os_ << std::left << std::setw(16) << name << value << "\n";
	}

	void note(std::string const& text) { flagged("NOTE", text); }
	void warning(std::string const& text) { flagged("WARNING", text); }
	void line(std::string const& text = {}) { os_ << text << "\n"; }

	std::string str() const { return os_.str(); }

private:
	void flagged(char const* tag, std::string const& text)
	{
		if (color_)
		{
			os_ << "\033[33m" << tag << ":\033[0m " << text << "\n";
		}
		else
		{
			os_ << tag << ": " << text << "\n";
		}
	}

	std::ostringstream os_;
	bool color_;
};

inline json diagnostics_json(SolveDiagnostics const& d)
{
	json out;
	out["condition_estimate"] = d.condition_estimate;
	out["pivot_magnitudes"] = d.pivot_magnitudes;
	out["scaled"] = d.scaled;
	out["method"] = d.method == SolveMethod::elimination ? "elimination" : "orthogonal";
	return out;
}

inline json envelope(char const* command)
{
	json doc;
	doc["format_version"] = kModelFormatVersion;
	doc["command"] = command;
	return doc;
}

inline std::string dump(json const& doc) { return doc.dump(2) + "\n"; }

inline std::string curve_csv(std::vector<double> const& d, std::vector<double> const& fitted, std::vector<double> const& observed)
{
	std::string out = "distance_m,fitted,observed\n";
	for (std::size_t i = 0; i < d.size(); ++i)
	{
		out += format_number(d[i]) + "," + format_number(fitted[i]) + "," + format_number(observed[i]) + "\n";
	}
	return out;
}

// ---------------------------------------------------------------------------

struct FitArgs
{
	std::string source;
	double d0 = 1.0;
	InterceptMode mode = InterceptMode::free;
	bool compare = false;
	std::string emit_curve;
	std::string save_model;
};

inline Outcome cmd_fit(FitArgs const& args, OutputFormat format, RunOptions const& opts)
{
	auto const src = resolve_source(args.source);
	auto const fit = fit_path_loss(src.stats, args.d0, args.mode);
	auto const& rep = fit.report;

	std::vector<double> observed;
	std::vector<double> fitted;
	for (std::size_t i = 0; i < src.stats.size(); ++i)
	{
		observed.push_back(src.stats[i].mean_rss);
		fitted.push_back(observed.back() - rep.residuals[i]);
	}

	std::vector<std::string> notes;
	std::optional<double> published;
	if (src.record && src.record->published)
	{
		published = src.record->published->eta;
		if (std::abs(rep.eta - *published) > kPublishedEtaNoteThreshold)
		{
			notes.push_back("published exponent " + format_number(*published) + " is not reproduced by least squares on the tabulated means (" + to_string(args.mode)
			                + " intercept gives " + fixed(rep.eta, 6) + "); the procedure behind the published value cannot be recovered from the table");
		}
	}

	Outcome out;
	if (!args.emit_curve.empty())
	{
		out.files.emplace_back(args.emit_curve, curve_csv(rep.distances, fitted, observed));
	}
	if (!args.save_model.empty())
	{
		auto model = fit.model;
		model.sigma = fit_sigma_polynomial(src.stats).polynomial;
		out.files.emplace_back(args.save_model, model_to_json(model));
	}

	if (format == OutputFormat::json)
	{
		auto doc = envelope("fit");
		doc["source"] = src.label;
		doc["rows"] = src.stats.size();
		doc["d0_m"] = rep.d0;
		doc["intercept_mode"] = to_string(rep.intercept_mode);
		doc["eta"] = rep.eta;
		doc["rss_d0_dbm"] = rep.rss_d0;
		doc["r2"] = rep.r2;
		doc["rmse_db"] = rep.rmse;
		doc["diagnostics"] = diagnostics_json(rep.diagnostics);
		json rows = json::array();
		for (std::size_t i = 0; i < rep.distances.size(); ++i)
		{
			rows.push_back({{"distance_m", rep.distances[i]},
			                {"mean_dbm", observed[i]},
			                {"fitted_dbm", fitted[i]},
			                {"residual_db", rep.residuals[i]},
			                {"y", rep.y_values[i]}});
		}
		doc["residuals"] = std::move(rows);
		if (args.compare && published)
		{
			doc["published"] = {{"eta", *published}, {"difference", rep.eta - *published}};
		}
		doc["notes"] = notes;
		out.stdout_text = dump(doc);
		return out;
	}

	if (format == OutputFormat::csv)
	{
		std::string csv = "distance_m,mean_dbm,fitted_dbm,residual_db,y_scaled\n";
		for (std::size_t i = 0; i < rep.distances.size(); ++i)
		{
			csv += format_number(rep.distances[i]) + "," + format_number(observed[i]) + "," + format_number(fitted[i]) + "," + format_number(rep.residuals[i]) + ","
			     + format_number(rep.y_values[i]) + "\n";
		}
		out.stdout_text = csv;
		return out;
	}

	TextReport t(opts.color);
	t.field("source", src.label + " (" + std::to_string(src.stats.size()) + " rows)");
	t.field("intercept", to_string(rep.intercept_mode) + ", d0 = " + format_number(rep.d0) + " m");
	t.field("eta", fixed(rep.eta, 6));
	t.field("rss_d0", fixed(rep.rss_d0) + " dBm");
	t.field("r2", fixed(rep.r2));
	t.field("rmse", fixed(rep.rmse) + " dB");
	if (args.compare)
	{
		if (published)
		{
			t.field("published eta", format_number(*published) + " (difference " + fixed(rep.eta - *published, 4) + ")");
		}
		else
		{
			t.field("published eta", "n/a");
		}
	}
	for (auto const& n : notes)
	{
		t.note(n);
	}
	t.line();
	t.line("  distance_m    mean_dbm  fitted_dbm  residual_db   y_scaled");
	for (std::size_t i = 0; i < rep.distances.size(); ++i)
	{
		std::ostringstream row;
		row << std::right << std::setw(12) << format_number(rep.distances[i]) << std::setw(12) << fixed(observed[i]) << std::setw(12) << fixed(fitted[i])
		    << std::setw(13) << fixed(rep.residuals[i]) << std::setw(11) << fixed(rep.y_values[i]);
		t.line(row.str());
	}
	out.stdout_text = t.str();
	return out;
}

// ---------------------------------------------------------------------------

struct SigmaFitArgs
{
	std::string source;
	SigmaTarget target = SigmaTarget::sample_sd;
	bool compare = false;
	std::string emit_curve;
};

inline Outcome cmd_sigma_fit(SigmaFitArgs const& args, OutputFormat format, RunOptions const& opts)
{
	auto const src = resolve_source(args.source);
	auto const fit = fit_sigma_polynomial(src.stats, args.target);
	auto const coef = fit.polynomial.coefficients();

	double stationarity_max = 0.0;
	for (double s : fit.stationarity)
	{
		stationarity_max = std::max(stationarity_max, std::abs(s));
	}

	std::vector<double> d;
	std::vector<double> fitted;
	for (auto const& s : src.stats)
	{
		d.push_back(s.distance);
		fitted.push_back(eval_quartic(coef, s.distance));
	}

	std::optional<PublishedFit> published;
	double curve_gap = 0.0;
	if (src.record && src.record->published)
	{
		published = src.record->published;
		for (double x : d)
		{
			curve_gap = std::max(curve_gap, std::abs(eval_quartic(coef, x) - eval_quartic(published->sigma_coefficients, x)));
		}
	}

	Outcome out;
	if (!args.emit_curve.empty())
	{
		out.files.emplace_back(args.emit_curve, curve_csv(d, fitted, fit.targets));
	}

	static constexpr char const* kNames[5] = {"a", "b", "c", "e", "f"};
	if (format == OutputFormat::json)
	{
		auto doc = envelope("sigma-fit");
		doc["source"] = src.label;
		doc["rows"] = src.stats.size();
		doc["target"] = to_string(args.target);
		json c;
		for (std::size_t k = 0; k < 5; ++k)
		{
			c[kNames[k]] = coef[k];
		}
		doc["coefficients"] = c;
		doc["d_min_m"] = fit.polynomial.d_min;
		doc["d_max_m"] = fit.polynomial.d_max;
		doc["r2"] = fit.goodness.r2;
		doc["rmse_db"] = fit.goodness.rmse;
		doc["rmse_unadjusted_db"] = fit.goodness.rmse_unadjusted;
		doc["sse"] = fit.goodness.sse;
		doc["dfe"] = fit.goodness.dfe;
		doc["stationarity"] = fit.stationarity;
		doc["stationarity_max_abs"] = stationarity_max;
		doc["diagnostics"] = diagnostics_json(fit.diagnostics);
		if (args.compare && published)
		{
			json p;
			for (std::size_t k = 0; k < 5; ++k)
			{
				p[kNames[k]] = published->sigma_coefficients[k];
			}
			doc["published"] = {{"coefficients", p}, {"r2", published->sigma_r2}, {"rmse_db", published->sigma_rmse}, {"max_curve_difference_db", curve_gap}};
		}
		out.stdout_text = dump(doc);
		return out;
	}

	if (format == OutputFormat::csv)
	{
		std::string csv = "a,b,c,e,f,d_min_m,d_max_m,r2,rmse_db,dfe\n";
		for (double k : coef)
		{
			csv += format_number(k) + ",";
		}
		csv += format_number(fit.polynomial.d_min) + "," + format_number(fit.polynomial.d_max) + "," + format_number(fit.goodness.r2) + ","
		     + format_number(fit.goodness.rmse) + "," + std::to_string(fit.goodness.dfe) + "\n";
		out.stdout_text = csv;
		return out;
	}

	TextReport t(opts.color);
	t.field("source", src.label + " (" + std::to_string(src.stats.size()) + " rows)");
	t.field("target", to_string(args.target));
	for (std::size_t k = 0; k < 5; ++k)
	{
		std::string value = sci(coef[k]);
		if (args.compare && published)
		{
			value += "   published " + sci(published->sigma_coefficients[k]);
		}
		t.field(kNames[k], value);
	}
	t.field("domain", "[" + format_number(fit.polynomial.d_min) + ", " + format_number(fit.polynomial.d_max) + "] m");
	std::string r2 = fixed(fit.goodness.r2);
	std::string rmse = fixed(fit.goodness.rmse) + " dB (dfe " + std::to_string(fit.goodness.dfe) + ", unadjusted " + fixed(fit.goodness.rmse_unadjusted) + ")";
	if (args.compare && published)
	{
		r2 += "   published " + format_number(published->sigma_r2);
		rmse += "   published " + format_number(published->sigma_rmse);
	}
	t.field("r2", r2);
	t.field("rmse", rmse);
	t.field("stationarity", "max |sum r d^k| = " + sci(stationarity_max));
	t.field("condition", sci(fit.diagnostics.condition_estimate) + (fit.diagnostics.scaled ? " (scaled distances)" : " (raw moments)"));
	if (args.compare && published)
	{
		t.field("curve gap", fixed(curve_gap) + " dB max vs published quartic");
	}
	out.stdout_text = t.str();
	return out;
}

// ---------------------------------------------------------------------------

inline Outcome cmd_predict(std::string const& model_path, double d, OutputFormat format, RunOptions const& opts)
{
	auto const model = load_model(model_path);
	double const rss = predict_mean_rss(model, d);
	auto const sigma = sigma_at(model, d);
	Outcome out;
	if (format == OutputFormat::json)
	{
		auto doc = envelope("predict");
		doc["distance_m"] = d;
		doc["mean_rss_dbm"] = rss;
		doc["sigma_db"] = sigma.value;
		doc["sigma_clamped"] = sigma.clamped;
		out.stdout_text = dump(doc);
	}
	else if (format == OutputFormat::csv)
	{
		out.stdout_text = "distance_m,mean_rss_dbm,sigma_db,sigma_clamped\n" + format_number(d) + "," + format_number(rss) + "," + format_number(sigma.value) + ","
		                + (sigma.clamped ? "true" : "false") + "\n";
	}
	else
	{
		TextReport t(opts.color);
		t.field("distance", format_number(d) + " m");
		t.field("mean rss", fixed(rss) + " dBm");
		t.field("sigma", fixed(sigma.value) + " dB");
		if (sigma.clamped)
		{
			t.warning("distance outside the fitted sigma range; sigma held at the nearest end");
		}
		out.stdout_text = t.str();
	}
	return out;
}

inline Outcome cmd_localize(std::string const& model_path, double rss, double level, OutputFormat format, RunOptions const& opts)
{
	auto const model = load_model(model_path);
	auto const est = confidence_interval(model, rss, level);
	Outcome out;
	if (format == OutputFormat::json)
	{
		auto doc = envelope("localize");
		doc["rss_dbm"] = rss;
		doc["level"] = level;
		doc["z"] = est.z;
		doc["d_hat_m"] = est.d_hat;
		doc["d_lo_m"] = est.d_lo;
		doc["d_hi_m"] = est.d_hi;
		doc["sigma_db"] = est.sigma_used;
		doc["sigma_clamped"] = est.clamped;
		out.stdout_text = dump(doc);
	}
	else if (format == OutputFormat::csv)
	{
		out.stdout_text = "rss_dbm,level,d_hat_m,d_lo_m,d_hi_m,sigma_db,sigma_clamped\n" + format_number(rss) + "," + format_number(level) + "," + format_number(est.d_hat) + ","
		                + format_number(est.d_lo) + "," + format_number(est.d_hi) + "," + format_number(est.sigma_used) + "," + (est.clamped ? "true" : "false") + "\n";
	}
	else
	{
		TextReport t(opts.color);
		t.field("distance", fixed(est.d_hat, 3) + " m");
		t.field("interval", "[" + fixed(est.d_lo, 3) + ", " + fixed(est.d_hi, 3) + "] m at " + format_number(level * 100.0) + " %");
		t.field("sigma", fixed(est.sigma_used) + " dB (z = " + fixed(est.z, 4) + ")");
		if (est.clamped)
		{
			t.warning("estimate outside the fitted sigma range; sigma held at the nearest end");
		}
		out.stdout_text = t.str();
	}
	return out;
}

inline Outcome cmd_plan(std::string const& model_path, double sensitivity, double z, OutputFormat format, RunOptions const& opts)
{
	auto const model = load_model(model_path);
	auto const plan = max_range(model, LinkConstants{sensitivity}, z);

	std::vector<std::string> warnings;
	if (plan.extrapolated)
	{
		auto const& poly = std::get<SigmaPolynomial>(model.sigma);
		warnings.push_back("range extrapolates beyond the calibrated distances [" + format_number(poly.d_min) + ", " + format_number(poly.d_max)
		                   + "] m; sigma is held at its end value and the measured range tests below are the better guide");
	}
	if (plan.unbounded)
	{
		warnings.push_back("link budget still holds at the search limit of " + format_number(kMaxSearchRange) + " m");
	}

	Outcome out;
	if (format == OutputFormat::json)
	{
		auto doc = envelope("plan");
		doc["max_range_m"] = plan.max_range;
		doc["margin_db"] = plan.margin_db;
		doc["outage_z"] = plan.outage_z;
		doc["sensitivity_dbm"] = plan.sensitivity;
		doc["sigma_clamped"] = plan.sigma_clamped;
		doc["extrapolated"] = plan.extrapolated;
		doc["unbounded"] = plan.unbounded;
		json refs = json::array();
		for (auto const& name : dataset_names())
		{
			auto const& rec = embedded_dataset(name);
			if (rec.range_test)
			{
				refs.push_back({{"site", rec.name}, {"min_m", rec.range_test->min_m}, {"max_m", rec.range_test->max_m}});
			}
		}
		doc["reference_ranges"] = std::move(refs);
		doc["warnings"] = warnings;
		out.stdout_text = dump(doc);
		return out;
	}
	if (format == OutputFormat::csv)
	{
		out.stdout_text = "max_range_m,margin_db,outage_z,sensitivity_dbm,extrapolated\n" + format_number(plan.max_range) + "," + format_number(plan.margin_db) + ","
		                + format_number(plan.outage_z) + "," + format_number(plan.sensitivity) + "," + (plan.extrapolated ? "true" : "false") + "\n";
		return out;
	}
	TextReport t(opts.color);
	t.field("max range", fixed(plan.max_range, 2) + " m");
	t.field("margin", fixed(plan.margin_db, 3) + " dB (z = " + format_number(plan.outage_z) + ")");
	t.field("sensitivity", format_number(plan.sensitivity) + " dBm");
	for (auto const& w : warnings)
	{
		t.warning(w);
	}
	t.line("measured range tests (reference only):");
	for (auto const& name : dataset_names())
	{
		auto const& rec = embedded_dataset(name);
		if (rec.range_test)
		{
			std::ostringstream row;
			row << "  " << std::left << std::setw(20) << rec.name << format_number(rec.range_test->min_m) << "-" << format_number(rec.range_test->max_m) << " m";
			t.line(row.str());
		}
	}
	out.stdout_text = t.str();
	return out;
}

// ---------------------------------------------------------------------------

/// "1:20" (unit step), "1:20:0.5", or a comma list "1,2,5.5".
inline std::vector<double> parse_distances(std::string const& text)
{
	auto number = [&](std::string_view field) {
		auto v = parse_number(field);
		if (!v || !std::isfinite(*v))
		{
			throw Error(Errc::parse, "--distances: '" + std::string(field) + "' is not a number");
		}
		return *v;
	};
	std::vector<double> out;
	if (text.find(':') != std::string::npos)
	{
		std::vector<std::string_view> parts;
		std::string_view rest = text;
		while (true)
		{
			auto const colon = rest.find(':');
			parts.push_back(rest.substr(0, colon));
			if (colon == std::string_view::npos)
			{
				break;
			}
			rest.remove_prefix(colon + 1);
		}
		if (parts.size() < 2 || parts.size() > 3)
		{
			throw Error(Errc::parse, "--distances range must be START:STOP or START:STOP:STEP");
		}
		double const start = number(parts[0]);
		double const stop = number(parts[1]);
		double const step = parts.size() == 3 ? number(parts[2]) : 1.0;
		if (!(step > 0.0) || stop < start)
		{
			throw Error(Errc::invalid_input, "--distances range needs STOP >= START and a positive STEP");
		}
		auto const count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
		if (count > 1'000'000)
		{
			throw Error(Errc::invalid_input, "--distances range is too long");
		}
		for (std::size_t i = 0; i < count; ++i)
		{
			out.push_back(start + step * static_cast<double>(i));
		}
		return out;
	}
	for (auto const field : shadowfit::detail::split_fields(text))
	{
		out.push_back(number(field));
	}
	return out;
}

struct SimulateArgs
{
	std::string model_path;
	std::optional<double> eta;
	double rss_d0 = -40.0;
	double d0 = 1.0;
	double sigma_db = 0.0;
	std::string distances = "1:20";
	std::size_t samples = 20;
	std::uint64_t seed = 0;
	std::string site = "simulated";
	std::string out_path;
};

inline Outcome cmd_simulate(SimulateArgs const& args, OutputFormat format, RunOptions const&)
{
	SimulationSpec spec;
	if (!args.model_path.empty())
	{
		spec.model = load_model(args.model_path);
	}
	else if (args.eta)
	{
		spec.model = ShadowedPathLossModel{args.d0, args.rss_d0, *args.eta, ConstantSigma{args.sigma_db}};
	}
	else
	{
		throw Error(Errc::invalid_input, "simulate needs --model or --eta");
	}
	spec.distances = parse_distances(args.distances);
	spec.samples_per_distance = args.samples;
	spec.seed = args.seed;
	spec.site = args.site;
	auto const survey = simulate_survey(spec);

	std::string payload;
	if (format == OutputFormat::json)
	{
		auto doc = envelope("simulate");
		doc["site"] = survey.site;
		doc["seed"] = args.seed;
		doc["model"] = model_to_json_value(spec.model);
		json rows = json::array();
		for (auto const& row : survey.rows)
		{
			rows.push_back({{"distance_m", row.distance}, {"samples", row.samples}});
		}
		doc["rows"] = std::move(rows);
		payload = dump(doc);
	}
	else
	{
		payload = save_survey_csv(survey);
	}

	Outcome out;
	if (args.out_path.empty())
	{
		out.stdout_text = std::move(payload);
	}
	else
	{
		out.files.emplace_back(args.out_path, std::move(payload));
	}
	return out;
}

inline Outcome cmd_datasets_list(OutputFormat format, RunOptions const& opts)
{
	Outcome out;
	if (format == OutputFormat::json)
	{
		auto doc = envelope("datasets");
		json list = json::array();
		for (auto const& name : dataset_names())
		{
			auto const& rec = embedded_dataset(name);
			json item{{"name", rec.name}, {"rows", rec.stats.size()}};
			if (rec.range_test)
			{
				item["range_test"] = {{"min_m", rec.range_test->min_m}, {"max_m", rec.range_test->max_m}};
			}
			item["provenance"] = rec.provenance;
			list.push_back(std::move(item));
		}
		doc["datasets"] = std::move(list);
		out.stdout_text = dump(doc);
		return out;
	}
	if (format == OutputFormat::csv)
	{
		std::string csv = "name,rows,range_min_m,range_max_m\n";
		for (auto const& name : dataset_names())
		{
			auto const& rec = embedded_dataset(name);
			csv += rec.name + "," + std::to_string(rec.stats.size()) + "," + (rec.range_test ? format_number(rec.range_test->min_m) : "") + ","
			     + (rec.range_test ? format_number(rec.range_test->max_m) : "") + "\n";
		}
		out.stdout_text = csv;
		return out;
	}
	TextReport t(opts.color);
	for (auto const& name : dataset_names())
	{
		auto const& rec = embedded_dataset(name);
		std::ostringstream row;
		row << std::left << std::setw(20) << rec.name << std::setw(10) << (std::to_string(rec.stats.size()) + " rows");
		if (rec.range_test)
		{
			row << "range test " << format_number(rec.range_test->min_m) << "-" << format_number(rec.range_test->max_m) << " m";
		}
		t.line(row.str());
	}
	out.stdout_text = t.str();
	return out;
}

inline Outcome cmd_datasets_export(std::string const& name, std::string const& out_path, OutputFormat format)
{
	auto const& rec = embedded_dataset(name);
	std::string payload;
	if (format == OutputFormat::json)
	{
		auto doc = envelope("datasets-export");
		doc["name"] = rec.name;
		json rows = json::array();
		for (auto const& s : rec.stats)
		{
			json row{{"distance_m", s.distance}, {"mean_dbm", s.mean_rss}, {"sd_db", s.sd}};
			row["prr_pct"] = s.prr ? json(*s.prr) : json(nullptr);
			row["n"] = s.n;
			rows.push_back(std::move(row));
		}
		doc["rows"] = std::move(rows);
		payload = dump(doc);
	}
	else
	{
		payload = save_stats_csv(rec.stats);
	}
	Outcome out;
	if (out_path.empty())
	{
		out.stdout_text = std::move(payload);
	}
	else
	{
		out.files.emplace_back(out_path, std::move(payload));
	}
	return out;
}

} // namespace detail

/// Parses `args` (without the program name), runs one command and writes
/// its output. Returns the process exit code.
inline int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err, RunOptions const& opts = {})
{
	using namespace detail;

	CLI::App app{"Calibrate log-normal shadowing models from RSSI surveys and use them for ranging and link planning.", "shadowfit"};
	app.require_subcommand(1);

	std::string format_name = "text";
	auto add_format = [&](CLI::App* sub) {
		sub->add_option("--format", format_name, "Output format")->check(CLI::IsMember({"text", "json", "csv"}))->capture_default_str();
	};

	FitArgs fit_args;
	std::string intercept_name = "free";
	auto* fit = app.add_subcommand("fit", "Fit the path-loss exponent to mean RSS against log distance");
	fit->add_option("source", fit_args.source, "Embedded dataset name, stats CSV or survey CSV")->required();
	fit->add_option("--d0", fit_args.d0, "Reference distance in metres")->capture_default_str();
	fit->add_option("--intercept", intercept_name, "free or anchored")->check(CLI::IsMember({"free", "anchored"}))->capture_default_str();
	fit->add_flag("--compare-paper", fit_args.compare, "Show the published exponent beside the computed one");
	fit->add_option("--emit-curve", fit_args.emit_curve, "Write distance,fitted,observed CSV to FILE");
	fit->add_option("--save-model", fit_args.save_model, "Also fit the sigma quartic and write the model document to FILE");
	add_format(fit);

	SigmaFitArgs sigma_args;
	std::string target_name = "sample_sd";
	auto* sigma_fit = app.add_subcommand("sigma-fit", "Fit the quartic shadowing standard deviation against distance");
	sigma_fit->add_option("source", sigma_args.source, "Embedded dataset name, stats CSV or survey CSV")->required();
	sigma_fit->add_option("--target", target_name, "sample_sd or residual_y")->check(CLI::IsMember({"sample_sd", "residual_y"}))->capture_default_str();
	sigma_fit->add_flag("--compare-paper", sigma_args.compare, "Show the published coefficients beside the computed ones");
	sigma_fit->add_option("--emit-curve", sigma_args.emit_curve, "Write distance,fitted,observed CSV to FILE");
	add_format(sigma_fit);

	std::string model_path;
	double distance = 0.0;
	auto* predict = app.add_subcommand("predict", "Mean RSS and sigma at a distance");
	predict->add_option("--model", model_path, "Model document")->required();
	predict->add_option("--d", distance, "Distance in metres")->required();
	add_format(predict);

	double rss = 0.0;
	double level = 0.95;
	auto* localize = app.add_subcommand("localize", "Distance estimate and confidence interval from an RSS reading");
	localize->add_option("--model", model_path, "Model document")->required();
	localize->add_option("--rss", rss, "Received signal strength in dBm")->required();
	localize->add_option("--level", level, "Two-sided confidence level")->capture_default_str();
	add_format(localize);

	double sensitivity = LinkConstants{}.receiver_sensitivity_dbm;
	double z = 0.0;
	auto* plan = app.add_subcommand("plan", "Maximum range against receiver sensitivity with an outage margin");
	plan->add_option("--model", model_path, "Model document")->required();
	plan->add_option("--sensitivity", sensitivity, "Receiver sensitivity in dBm")->capture_default_str();
	plan->add_option("--z", z, "Outage margin in standard deviations")->capture_default_str();
	add_format(plan);

	SimulateArgs sim_args;
	double sim_eta = 0.0;
	auto* simulate = app.add_subcommand("simulate", "Generate a synthetic survey CSV");
	auto* model_opt = simulate->add_option("--model", sim_args.model_path, "Model document");
	auto* eta_opt = simulate->add_option("--eta", sim_eta, "Path-loss exponent (instead of --model)");
	simulate->add_option("--rss-d0", sim_args.rss_d0, "Mean RSS at d0 in dBm")->capture_default_str();
	simulate->add_option("--d0", sim_args.d0, "Reference distance in metres")->capture_default_str();
	simulate->add_option("--sigma-db", sim_args.sigma_db, "Constant shadowing SD in dB")->capture_default_str();
	simulate->add_option("--distances", sim_args.distances, "START:STOP[:STEP] or a comma list")->capture_default_str();
	simulate->add_option("--samples", sim_args.samples, "Samples per distance")->capture_default_str();
	simulate->add_option("--seed", sim_args.seed, "Generator seed")->capture_default_str();
	simulate->add_option("--site", sim_args.site, "Site label")->capture_default_str();
	simulate->add_option("--out", sim_args.out_path, "Write to FILE instead of stdout");
	model_opt->excludes(eta_opt);
	add_format(simulate);

	auto* datasets = app.add_subcommand("datasets", "List or export the built-in datasets");
	datasets->require_subcommand(1);
	auto* list = datasets->add_subcommand("list", "List datasets");
	add_format(list);
	std::string export_name;
	std::string export_out;
	auto* exporter = datasets->add_subcommand("export", "Export a dataset as stats CSV");
	exporter->add_option("name", export_name, "Dataset name")->required();
	exporter->add_option("--out", export_out, "Write to FILE instead of stdout");
	add_format(exporter);

	std::vector<char const*> argv{"shadowfit"};
	for (auto const& a : args)
	{
		argv.push_back(a.c_str());
	}

	try
	{
		app.parse(static_cast<int>(argv.size()), argv.data());
	}
	catch (CLI::CallForHelp const&)
	{
		out << app.help();
		return 0;
	}
	catch (CLI::CallForAllHelp const&)
	{
		out << app.help("", CLI::AppFormatMode::All);
		return 0;
	}
	catch (CLI::ParseError const& e)
	{
		err << "error: " << e.what() << "\n";
		return 1;
	}

	auto const format = format_name == "json" ? OutputFormat::json : format_name == "csv" ? OutputFormat::csv : OutputFormat::text;
	try
	{
		Outcome outcome;
		if (fit->parsed())
		{
			fit_args.mode = intercept_name == "anchored" ? InterceptMode::anchored : InterceptMode::free;
			outcome = cmd_fit(fit_args, format, opts);
		}
		else if (sigma_fit->parsed())
		{
			sigma_args.target = target_name == "residual_y" ? SigmaTarget::residual_y : SigmaTarget::sample_sd;
			outcome = cmd_sigma_fit(sigma_args, format, opts);
		}
		else if (predict->parsed())
		{
			outcome = cmd_predict(model_path, distance, format, opts);
		}
		else if (localize->parsed())
		{
			outcome = cmd_localize(model_path, rss, level, format, opts);
		}
		else if (plan->parsed())
		{
			outcome = cmd_plan(model_path, sensitivity, z, format, opts);
		}
		else if (simulate->parsed())
		{
			if (eta_opt->count() > 0)
			{
				sim_args.eta = sim_eta;
			}
			outcome = cmd_simulate(sim_args, format, opts);
		}
		else if (list->parsed())
		{
			outcome = cmd_datasets_list(format, opts);
		}
		else if (exporter->parsed())
		{
			outcome = cmd_datasets_export(export_name, export_out, format);
		}
		for (auto const& [path, content] : outcome.files)
		{
			write_file(path, content);
		}
		out << outcome.stdout_text;
		return 0;
	}
	catch (Error const& e)
	{
		err << "error: " << e.what() << "\n";
		return is_numerical(e.code()) ? 2 : 1;
	}
	catch (std::exception const& e)
	{
		err << "error: " << e.what() << "\n";
		return 1;
	}
}

} // namespace shadowfit::cli

#endif // SHADOWFIT_TOOLS_CLI_HPP
