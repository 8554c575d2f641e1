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
/// CSV codecs for surveys and per-distance statistics, and the versioned
/// JSON model document.
///
/// Survey CSV:  optional "# frequency=..." / "# notes=..." lines, then the
///              header `site,distance_m,rssi_dbm`, one sample per line.
/// Stats CSV:   header `distance_m,mean_dbm,sd_db,prr_pct,n`; prr_pct may
///              be empty.
/// Numbers are written in shortest round-trip form; lines end in '\n'.

#ifndef SHADOWFIT_IO_HPP
#define SHADOWFIT_IO_HPP

#include <charconv>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "shadowfit/domain.hpp"
#include "shadowfit/error.hpp"
#include "shadowfit/estimation.hpp"
#include "shadowfit/format.hpp"
#include "shadowfit/survey.hpp"

namespace shadowfit {

inline constexpr std::string_view kSurveyHeader = "site,distance_m,rssi_dbm";
inline constexpr std::string_view kStatsHeader = "distance_m,mean_dbm,sd_db,prr_pct,n";
inline constexpr int kModelFormatVersion = 1;

namespace detail {

struct CsvLine
{
	std::size_t number;
	std::string_view text;
};

inline std::vector<CsvLine> split_lines(std::string_view bytes)
{
	std::vector<CsvLine> lines;
	std::size_t number = 1;
	while (!bytes.empty())
	{
		auto const end = bytes.find('\n');
		auto line = bytes.substr(0, end);
		if (!line.empty() && line.back() == '\r')
		{
			line.remove_suffix(1);
		}
		lines.push_back({number++, line});
		if (end == std::string_view::npos)
		{
			break;
		}
		bytes.remove_prefix(end + 1);
	}
	return lines;
}

inline std::vector<std::string_view> split_fields(std::string_view line)
{
	std::vector<std::string_view> fields;
	while (true)
	{
		auto const comma = line.find(',');
		fields.push_back(line.substr(0, comma));
		if (comma == std::string_view::npos)
		{
			return fields;
		}
		line.remove_prefix(comma + 1);
	}
}

inline std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

inline double parse_field(std::string_view field, std::size_t line, std::size_t column, char const* name)
{
	auto const value = parse_number(field);
	if (!value || !std::isfinite(*value))
	{
		throw Error(Errc::parse, at_line(line) + "column " + std::to_string(column) + " (" + name + "): '" + std::string(field) + "' is not a finite number");
	}
	return *value;
}

inline void require_plain_text(std::string_view text, char const* what)
{
	if (text.find_first_of(",\"\n\r") != std::string_view::npos)
	{
		throw Error(Errc::validation, std::string(what) + " must not contain commas, quotes or line breaks");
	}
}

inline void require_single_line(std::string_view text, char const* what)
{
	if (text.find_first_of("\n\r") != std::string_view::npos)
	{
		throw Error(Errc::validation, std::string(what) + " must not contain line breaks");
	}
}

} // namespace detail

inline std::string save_survey_csv(RssiSurvey const& survey)
{
	survey.validate();
	detail::require_plain_text(survey.site, "site");
	std::string out;
	if (survey.frequency)
	{
		detail::require_single_line(*survey.frequency, "frequency");
		out += "# frequency=" + *survey.frequency + "\n";
	}
	if (survey.notes)
	{
		detail::require_single_line(*survey.notes, "notes");
		out += "# notes=" + *survey.notes + "\n";
	}
	out += kSurveyHeader;
	out += '\n';
	for (auto const& row : survey.rows)
	{
		std::string const prefix = survey.site + "," + format_number(row.distance) + ",";
		for (double s : row.samples)
		{
			out += prefix + format_number(s) + "\n";
		}
	}
	return out;
}

inline RssiSurvey load_survey_csv(std::string_view bytes)
{
	auto const lines = detail::split_lines(bytes);
	RssiSurvey survey;
	std::size_t i = 0;
	for (; i < lines.size() && lines[i].text.starts_with('#'); ++i)
	{
		auto const body = lines[i].text.substr(1);
		auto const trimmed = body.substr(body.starts_with(' ') ? 1 : 0);
		if (trimmed.starts_with("frequency="))
		{
			survey.frequency = std::string(trimmed.substr(10));
		}
		else if (trimmed.starts_with("notes="))
		{
			survey.notes = std::string(trimmed.substr(6));
		}
	}
	if (i == lines.size() || lines[i].text != kSurveyHeader)
	{
		std::size_t const at = i < lines.size() ? lines[i].number : lines.size() + 1;
		throw Error(Errc::format, detail::at_line(at) + "expected header '" + std::string(kSurveyHeader) + "'");
	}
	bool have_site = false;
	for (++i; i < lines.size(); ++i)
	{
		auto const& line = lines[i];
		if (line.text.empty())
		{
			continue;
		}
		auto const fields = detail::split_fields(line.text);
		if (fields.size() != 3)
		{
			throw Error(Errc::format, detail::at_line(line.number) + "expected 3 fields, got " + std::to_string(fields.size()));
		}
		double const distance = detail::parse_field(fields[1], line.number, 2, "distance_m");
		double const rssi = detail::parse_field(fields[2], line.number, 3, "rssi_dbm");
		if (!(distance > 0.0))
		{
			throw Error(Errc::validation, detail::at_line(line.number) + "distance_m must be positive, got " + std::string(fields[1]));
		}
		if (!have_site)
		{
			survey.site = std::string(fields[0]);
			have_site = true;
		}
		else if (fields[0] != survey.site)
		{
			throw Error(Errc::validation, detail::at_line(line.number) + "site '" + std::string(fields[0]) + "' differs from '" + survey.site + "'");
		}
		survey.add(distance, rssi);
	}
	return survey;
}

inline std::string save_stats_csv(std::span<DistanceStats const> stats)
{
	std::string out(kStatsHeader);
	out += '\n';
	for (auto const& row : stats)
	{
		row.validate();
		out += format_number(row.distance) + "," + format_number(row.mean_rss) + "," + format_number(row.sd) + ","
		     + (row.prr ? format_number(*row.prr) : std::string()) + "," + std::to_string(row.n) + "\n";
	}
	return out;
}

inline std::vector<DistanceStats> load_stats_csv(std::string_view bytes)
{
	auto const lines = detail::split_lines(bytes);
	if (lines.empty() || lines[0].text != kStatsHeader)
	{
		throw Error(Errc::format, detail::at_line(1) + "expected header '" + std::string(kStatsHeader) + "'");
	}
	std::vector<DistanceStats> out;
	for (std::size_t i = 1; i < lines.size(); ++i)
	{
		auto const& line = lines[i];
		if (line.text.empty())
		{
			continue;
		}
		auto const fields = detail::split_fields(line.text);
		if (fields.size() != 5)
		{
			throw Error(Errc::format, detail::at_line(line.number) + "expected 5 fields, got " + std::to_string(fields.size()));
		}
		DistanceStats row;
		row.distance = detail::parse_field(fields[0], line.number, 1, "distance_m");
		row.mean_rss = detail::parse_field(fields[1], line.number, 2, "mean_dbm");
		row.sd = detail::parse_field(fields[2], line.number, 3, "sd_db");
		if (!fields[3].empty())
		{
			row.prr = detail::parse_field(fields[3], line.number, 4, "prr_pct");
		}
		auto const n_text = fields[4];
		auto const res = std::from_chars(n_text.data(), n_text.data() + n_text.size(), row.n);
		if (res.ec != std::errc() || res.ptr != n_text.data() + n_text.size() || n_text.empty())
		{
			throw Error(Errc::parse, detail::at_line(line.number) + "column 5 (n): '" + std::string(n_text) + "' is not an integer");
		}
		try
		{
			row.validate();
		}
		catch (Error const& e)
		{
			throw Error(Errc::validation, detail::at_line(line.number) + e.what());
		}
		out.push_back(row);
	}
	return out;
}

namespace detail {

using json = nlohmann::ordered_json;

inline double json_number(json const& obj, std::string const& key, std::string const& path)
{
	auto const it = obj.find(key);
	if (it == obj.end())
	{
		throw Error(Errc::schema, "missing field '" + path + key + "'");
	}
	if (!it->is_number())
	{
		throw Error(Errc::schema, "field '" + path + key + "' must be a number");
	}
	return it->get<double>();
}

inline void reject_unknown(json const& obj, std::set<std::string> const& allowed, std::string const& path)
{
	for (auto const& [key, value] : obj.items())
	{
		if (!allowed.contains(key))
		{
			throw Error(Errc::schema, "unknown field '" + path + key + "'");
		}
	}
}

} // namespace detail

inline nlohmann::ordered_json model_to_json_value(ShadowedPathLossModel const& model)
{
	model.validate();
	nlohmann::ordered_json doc;
	doc["format_version"] = kModelFormatVersion;
	doc["d0_m"] = model.d0;
	doc["rss_d0_dbm"] = model.rss_d0;
	doc["eta"] = model.eta;
	nlohmann::ordered_json sigma;
	if (auto const* poly = std::get_if<SigmaPolynomial>(&model.sigma))
	{
		sigma["a"] = poly->a;
		sigma["b"] = poly->b;
		sigma["c"] = poly->c;
		sigma["e"] = poly->e;
		sigma["f"] = poly->f;
		sigma["d_min_m"] = poly->d_min;
		sigma["d_max_m"] = poly->d_max;
	}
	else
	{
		sigma["constant_db"] = std::get<ConstantSigma>(model.sigma).value_db;
	}
	doc["sigma"] = std::move(sigma);
	return doc;
}

inline std::string model_to_json(ShadowedPathLossModel const& model)
{
	return model_to_json_value(model).dump(2) + "\n";
}

inline ShadowedPathLossModel model_from_json_value(nlohmann::ordered_json const& doc)
{
	if (!doc.is_object())
	{
		throw Error(Errc::schema, "model document must be a JSON object");
	}
	detail::reject_unknown(doc, {"format_version", "d0_m", "rss_d0_dbm", "eta", "sigma"}, "");
	auto const version = doc.find("format_version");
	if (version == doc.end())
	{
		throw Error(Errc::schema, "missing field 'format_version'");
	}
	if (!version->is_number_integer() || version->get<long long>() != kModelFormatVersion)
	{
		throw Error(Errc::schema, "field 'format_version' must be " + std::to_string(kModelFormatVersion));
	}

	ShadowedPathLossModel model;
	model.d0 = detail::json_number(doc, "d0_m", "");
	model.rss_d0 = detail::json_number(doc, "rss_d0_dbm", "");
	model.eta = detail::json_number(doc, "eta", "");

	auto const sigma = doc.find("sigma");
	if (sigma == doc.end())
	{
		throw Error(Errc::schema, "missing field 'sigma'");
	}
	if (!sigma->is_object())
	{
		throw Error(Errc::schema, "field 'sigma' must be an object");
	}
	if (sigma->contains("constant_db"))
	{
		detail::reject_unknown(*sigma, {"constant_db"}, "sigma.");
		model.sigma = ConstantSigma{detail::json_number(*sigma, "constant_db", "sigma.")};
	}
	else
	{
		detail::reject_unknown(*sigma, {"a", "b", "c", "e", "f", "d_min_m", "d_max_m"}, "sigma.");
		SigmaPolynomial poly;
		poly.a = detail::json_number(*sigma, "a", "sigma.");
		poly.b = detail::json_number(*sigma, "b", "sigma.");
		poly.c = detail::json_number(*sigma, "c", "sigma.");
		poly.e = detail::json_number(*sigma, "e", "sigma.");
		poly.f = detail::json_number(*sigma, "f", "sigma.");
		poly.d_min = detail::json_number(*sigma, "d_min_m", "sigma.");
		poly.d_max = detail::json_number(*sigma, "d_max_m", "sigma.");
		model.sigma = poly;
	}
	try
	{
		model.validate();
	}
	catch (Error const& e)
	{
		throw Error(Errc::schema, e.what());
	}
	return model;
}

inline ShadowedPathLossModel model_from_json(std::string_view bytes)
{
	nlohmann::ordered_json doc;
	try
	{
		doc = nlohmann::ordered_json::parse(bytes);
	}
	catch (nlohmann::json::parse_error const& e)
	{
		throw Error(Errc::parse, std::string("model document: ") + e.what());
	}
	return model_from_json_value(doc);
}

} // namespace shadowfit

#endif // SHADOWFIT_IO_HPP
