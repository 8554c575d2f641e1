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

#include <random>
#include <string>

#include <gtest/gtest.h>

#include "canonical_tables.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "shadowfit/datasets.hpp"
#include "shadowfit/io.hpp"
#include "shadowfit/simulation.hpp"

namespace sf = shadowfit;

namespace {

template <class F>
sf::Error capture(F&& f)
{
	try
	{
		f();
	}
	catch (sf::Error const& e)
	{
		return e;
	}
	ADD_FAILURE() << "expected shadowfit::Error";
	return sf::Error(sf::Errc::invalid_input, "");
}

std::string const kStatsHead = "distance_m,mean_dbm,sd_db,prr_pct,n\n";

} // namespace

TEST(Datasets, RegistryContents)
{
	EXPECT_EQ(sf::dataset_names(), (std::vector<std::string>{"longwall-face", "gateroad-conveyor", "mine-car-pathway"}));
	auto const& lw = sf::embedded_dataset("longwall-face");
	ASSERT_EQ(lw.stats.size(), 20u);
	EXPECT_EQ(lw.stats[0], (sf::DistanceStats{1, -51.65, 0.48936, 20, 100.0}));
	EXPECT_EQ(lw.stats[19], (sf::DistanceStats{20, -86.85, 4.88041, 20, 86.2}));
	ASSERT_TRUE(lw.range_test.has_value());
	EXPECT_EQ(lw.range_test->min_m, 40.0);
	EXPECT_EQ(lw.range_test->max_m, 45.0);
	EXPECT_EQ(sf::embedded_dataset("gateroad-conveyor").published->eta, 1.568);
	EXPECT_TRUE(sf::embedded_dataset("mine-car-pathway").stats.empty());
}

TEST(Datasets, UnknownNameListsAvailable)
{
	EXPECT_FALSE(sf::has_dataset("tunnel"));
	auto const e = capture([] { (void)sf::embedded_dataset("tunnel"); });
	EXPECT_EQ(e.code(), sf::Errc::not_found);
	EXPECT_NE(std::string(e.what()).find("longwall-face"), std::string::npos);
}

TEST(Datasets, ExportMatchesCanonicalTranscription)
{
	std::string const lw = sf::save_stats_csv(sf::embedded_dataset("longwall-face").stats);
	std::string const gr = sf::save_stats_csv(sf::embedded_dataset("gateroad-conveyor").stats);
	EXPECT_EQ(lw, canonical::kLongwallCsv);
	EXPECT_EQ(gr, canonical::kGateroadCsv);
	EXPECT_EQ(oracle::fnv1a(lw), canonical::kLongwallFnv);
	EXPECT_EQ(oracle::fnv1a(gr), canonical::kGateroadFnv);
	EXPECT_EQ(std::count(lw.begin(), lw.end(), '\n'), 21);
	EXPECT_EQ(lw.substr(lw.find('\n') + 1, 24), "1,-51.65,0.48936,100,20\n");
}

TEST(StatsCsv, LoadsCanonicalText)
{
	auto const rows = sf::load_stats_csv(canonical::kGateroadCsv);
	EXPECT_EQ(rows, sf::embedded_dataset("gateroad-conveyor").stats);
}

TEST(StatsCsv, EmptyPrrAndCrlf)
{
	auto const rows = sf::load_stats_csv("distance_m,mean_dbm,sd_db,prr_pct,n\r\n2.5,-60,1.5,,7\r\n\r\n");
	ASSERT_EQ(rows.size(), 1u);
	EXPECT_EQ(rows[0], (sf::DistanceStats{2.5, -60, 1.5, 7, std::nullopt}));
	EXPECT_EQ(sf::save_stats_csv(rows), kStatsHead + "2.5,-60,1.5,,7\n");
}

TEST(StatsCsv, ErrorsNameLineAndColumn)
{
	auto e = capture([] { (void)sf::load_stats_csv("distance,mean\n"); });
	EXPECT_EQ(e.code(), sf::Errc::format);
	EXPECT_NE(std::string(e.what()).find("line 1"), std::string::npos);

	e = capture([] { (void)sf::load_stats_csv(kStatsHead + "1,-50,2,100,20\n2,-5x,2,100,20\n"); });
	EXPECT_EQ(e.code(), sf::Errc::parse);
	EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
	EXPECT_NE(std::string(e.what()).find("column 2"), std::string::npos);

	e = capture([] { (void)sf::load_stats_csv(kStatsHead + "1,-50,2,100\n"); });
	EXPECT_EQ(e.code(), sf::Errc::format);

	e = capture([] { (void)sf::load_stats_csv(kStatsHead + "1,-50,2,100,2.5\n"); });
	EXPECT_EQ(e.code(), sf::Errc::parse);
	EXPECT_NE(std::string(e.what()).find("column 5"), std::string::npos);

	e = capture([] { (void)sf::load_stats_csv(kStatsHead + "0,-50,2,100,20\n"); });
	EXPECT_EQ(e.code(), sf::Errc::validation);
	EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);

	e = capture([] { (void)sf::load_stats_csv(kStatsHead + "1,-50,-2,100,20\n"); });
	EXPECT_EQ(e.code(), sf::Errc::validation);

	e = capture([] { (void)sf::load_stats_csv(kStatsHead + "1,-50,2,101,20\n"); });
	EXPECT_EQ(e.code(), sf::Errc::validation);

	e = capture([] { (void)sf::load_stats_csv(kStatsHead + "1,nan,2,100,20\n"); });
	EXPECT_EQ(e.code(), sf::Errc::parse);
}

TEST(SurveyCsv, Example)
{
	std::string const text = "# frequency=2.4 GHz\n"
	                         "site,distance_m,rssi_dbm\n"
	                         "gate,1,-50.5\n"
	                         "gate,2,-55\n"
	                         "gate,1,-51\n";
	auto const s = sf::load_survey_csv(text);
	EXPECT_EQ(s.site, "gate");
	EXPECT_EQ(s.frequency, "2.4 GHz");
	EXPECT_FALSE(s.notes.has_value());
	ASSERT_EQ(s.rows.size(), 2u);
	EXPECT_EQ(s.rows[0].samples, (std::vector<double>{-50.5, -51}));
	// rows are regrouped by distance on save
	EXPECT_EQ(sf::save_survey_csv(s), "# frequency=2.4 GHz\nsite,distance_m,rssi_dbm\ngate,1,-50.5\ngate,1,-51\ngate,2,-55\n");
}

TEST(SurveyCsv, Errors)
{
	auto e = capture([] { (void)sf::load_survey_csv("site,distance,rssi\n"); });
	EXPECT_EQ(e.code(), sf::Errc::format);

	e = capture([] { (void)sf::load_survey_csv("site,distance_m,rssi_dbm\na,1,-50\na,2,abc\n"); });
	EXPECT_EQ(e.code(), sf::Errc::parse);
	EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
	EXPECT_NE(std::string(e.what()).find("column 3"), std::string::npos);

	e = capture([] { (void)sf::load_survey_csv("site,distance_m,rssi_dbm\na,-1,-50\n"); });
	EXPECT_EQ(e.code(), sf::Errc::validation);

	e = capture([] { (void)sf::load_survey_csv("site,distance_m,rssi_dbm\na,1,-50\nb,1,-50\n"); });
	EXPECT_EQ(e.code(), sf::Errc::validation);

	e = capture([] { (void)sf::load_survey_csv("site,distance_m,rssi_dbm\na,1\n"); });
	EXPECT_EQ(e.code(), sf::Errc::format);

	sf::RssiSurvey bad{"a,b", {{1.0, {-50.0}}}, std::nullopt, std::nullopt};
	e = capture([&] { (void)sf::save_survey_csv(bad); });
	EXPECT_EQ(e.code(), sf::Errc::validation);
}

TEST(SurveyCsv, SimulatedRoundTrip)
{
	sf::SimulationSpec spec;
	spec.model = {1.0, -45.0, 2.3, sf::ConstantSigma{4.0}};
	for (int d = 1; d <= 20; ++d)
	{
		spec.distances.push_back(d);
	}
	spec.samples_per_distance = 20;
	spec.seed = 9;
	auto const survey = sf::simulate_survey(spec);
	EXPECT_EQ(sf::load_survey_csv(sf::save_survey_csv(survey)), survey);
}

TEST(ModelJson, LongwallRoundTrip)
{
	auto const stats = sf::embedded_dataset("longwall-face").stats;
	auto model = sf::fit_path_loss(stats).model;
	model.sigma = sf::fit_sigma_polynomial(stats).polynomial;
	auto const text = sf::model_to_json(model);
	EXPECT_EQ(sf::model_from_json(text), model);
	EXPECT_EQ(sf::model_to_json(sf::model_from_json(text)), text);
}

TEST(ModelJson, Layout)
{
	sf::ShadowedPathLossModel const m{1.0, -40.0, 2.0, sf::ConstantSigma{3.5}};
	EXPECT_EQ(sf::model_to_json(m), "{\n"
	                                "  \"format_version\": 1,\n"
	                                "  \"d0_m\": 1.0,\n"
	                                "  \"rss_d0_dbm\": -40.0,\n"
	                                "  \"eta\": 2.0,\n"
	                                "  \"sigma\": {\n"
	                                "    \"constant_db\": 3.5\n"
	                                "  }\n"
	                                "}\n");
}

TEST(ModelJson, StrictSchema)
{
	std::string const ok = R"({"format_version":1,"d0_m":1,"rss_d0_dbm":-40,"eta":2,"sigma":{"constant_db":2}})";
	EXPECT_NO_THROW((void)sf::model_from_json(ok));

	auto expect_schema = [](std::string const& text, std::string const& needle) {
		auto const e = capture([&] { (void)sf::model_from_json(text); });
		EXPECT_EQ(e.code(), sf::Errc::schema) << text;
		EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
	};
	expect_schema(R"({"format_version":1,"d0_m":1,"rss_d0_dbm":-40,"eta":2,"sigma":{"constant_db":2},"x":1})", "'x'");
	expect_schema(R"({"format_version":1,"d0_m":1,"rss_d0_dbm":-40,"eta":2,"sigma":{"constant_db":2,"foo":0}})", "sigma.foo");
	expect_schema(R"({"format_version":1,"d0_m":1,"rss_d0_dbm":-40,"sigma":{"constant_db":2}})", "'eta'");
	expect_schema(R"({"format_version":2,"d0_m":1,"rss_d0_dbm":-40,"eta":2,"sigma":{"constant_db":2}})", "format_version");
	expect_schema(R"({"format_version":1.5,"d0_m":1,"rss_d0_dbm":-40,"eta":2,"sigma":{"constant_db":2}})", "format_version");
	expect_schema(R"({"d0_m":1,"rss_d0_dbm":-40,"eta":2,"sigma":{"constant_db":2}})", "format_version");
	expect_schema(R"({"format_version":1,"d0_m":"1","rss_d0_dbm":-40,"eta":2,"sigma":{"constant_db":2}})", "d0_m");
	expect_schema(R"({"format_version":1,"d0_m":0,"rss_d0_dbm":-40,"eta":2,"sigma":{"constant_db":2}})", "d0");
	expect_schema(R"({"format_version":1,"d0_m":1,"rss_d0_dbm":-40,"eta":2,"sigma":{"a":0,"b":0,"c":0,"e":0,"f":1,"d_min_m":1}})", "sigma.d_max_m");
	expect_schema(R"([1,2])", "object");

	auto const e = capture([] { (void)sf::model_from_json("{\"format_version\":"); });
	EXPECT_EQ(e.code(), sf::Errc::parse);
}

TEST(Properties, SurveyCsvRoundTrip)
{
	std::mt19937_64 rng(1);
	for (int i = 0; i < 1000; ++i)
	{
		auto const s = gen::survey(rng);
		ASSERT_EQ(sf::load_survey_csv(sf::save_survey_csv(s)), s) << "instance " << i;
	}
}

TEST(Properties, StatsCsvRoundTrip)
{
	std::mt19937_64 rng(2);
	for (int i = 0; i < 1000; ++i)
	{
		auto const s = gen::stats(rng);
		ASSERT_EQ(sf::load_stats_csv(sf::save_stats_csv(s)), s) << "instance " << i;
	}
}

TEST(Properties, ModelJsonRoundTrip)
{
	std::mt19937_64 rng(3);
	for (int i = 0; i < 1000; ++i)
	{
		auto const m = gen::model(rng);
		ASSERT_EQ(sf::model_from_json(sf::model_to_json(m)), m) << "instance " << i;
	}
}
