#include <doctest.h>

#include <algorithm>
#include <string>

#include "thetanorm/scan.hpp"

using namespace thetanorm;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

RunConfig cfg_from(const std::string& text) { return parse_run_config(json::parse(text)); }

}  // namespace

TEST_CASE("config parsing") {
  SUBCASE("round values and defaults") {
    RunConfig c = cfg_from(R"({"g":3,"preset":"paper-g3"})");
    CHECK(c.g == 3);
    CHECK(c.preset == "paper-g3");
    CHECK(c.series_tol == 1e-12);
    CHECK(c.tols.rank_tol == 1e-13);
    CHECK(c.tols.accept == 5e-13);
    CHECK(c.tols.reject == 1e-14);
    CHECK(c.effective_min_h0() == 15);
    CHECK(c.effective_max_h0() == 48);
    CHECK_NOTHROW(c.validate());
  }
  SUBCASE("g derives from the preset") {
    RunConfig c = cfg_from(R"({"preset":"paper-g4"})");
    CHECK(c.g == 4);
    CHECK(c.effective_min_h0() == 31);
    CHECK(c.effective_max_h0() == 384);
  }
  SUBCASE("explicit fields") {
    RunConfig c = cfg_from(
        R"({"g":2,"seed":11,"series_tol":1e-10,"rank_tol":1e-12,"accept":1e-9,
            "reject":1e-15,"min_h0":7,"max_h0":9,"format":"csv","jobs":2,
            "force_numeric":true,"type":"1,8"})");
    CHECK(c.seed == 11);
    CHECK(c.series_tol == 1e-10);
    CHECK(c.tols.accept == 1e-9);
    CHECK(c.min_h0 == 7);
    CHECK(c.format == "csv");
    CHECK(c.jobs == 2);
    CHECK(c.force_numeric);
    REQUIRE(c.type.has_value());
    CHECK(c.type->str() == "(1,8)");
    CHECK_NOTHROW(c.validate());
  }
  SUBCASE("rejects") {
    CHECK_THROWS_AS(cfg_from(R"({"seed":3})"), std::invalid_argument);  // g unknown
    CHECK_THROWS_AS(cfg_from(R"({"g":2,"sseed":3})"), std::invalid_argument);
    CHECK_THROWS_AS(cfg_from(R"({"g":"two"})"), std::invalid_argument);
    CHECK_THROWS_AS(cfg_from(R"({"g":2,"X":[[0,1],[1,0]]})").validate(),
                    std::invalid_argument);  // X without k
    CHECK_THROWS_AS(cfg_from(R"({"g":3,"preset":"paper-g3","seed":5})").validate(),
                    std::invalid_argument);  // two sources
    CHECK_THROWS_AS(cfg_from(R"({"g":2,"preset":"paper-g3"})").validate(),
                    std::invalid_argument);  // preset/g mismatch
    CHECK_THROWS_AS(cfg_from(R"({"g":3,"format":"xml"})").validate(), std::invalid_argument);
    CHECK_THROWS_AS(cfg_from(R"({"g":3,"jobs":0})").validate(), std::invalid_argument);
    CHECK_THROWS_AS(cfg_from(R"({"g":3,"min_h0":20,"max_h0":10})").validate(),
                    std::invalid_argument);
    CHECK_THROWS_AS(cfg_from(R"({"g":3,"type":"2,2"})").validate(), std::invalid_argument);
    CHECK_THROWS_AS(cfg_from(R"({"g":3,"force_numeric":true})").validate(),
                    std::invalid_argument);  // forcing numerics needs a point
    CHECK_THROWS_AS(cfg_from(R"({"g":2,"X":[[0,1],[1]],"k":{"re":0,"im":1}})"),
                    std::invalid_argument);  // ragged rows
  }
  SUBCASE("round trip is byte-identical") {
    for (const char* text :
         {R"({"g":2,"seed":11,"min_h0":7,"max_h0":9})",
          R"({"g":2,"X":[[0,1],[1,0]],"k":{"re":1.0,"im":0.5773502691896258}})",
          R"({"g":1,"Z":{"re":[[0.25]],"im":[[1.75]]},"series_tol":1e-11})"}) {
      RunConfig c0 = cfg_from(text);
      std::string d0 = config_json(c0).dump();
      RunConfig c1 = parse_run_config(json::parse(d0));
      CHECK(config_json(c1).dump() == d0);
    }
  }
}

TEST_CASE("single type checks") {
  SUBCASE("predicate row at the g=3 point") {
    RunConfig c = cfg_from(R"({"g":3,"preset":"paper-g3"})");
    CheckResult r = run_check(c, PolarizationType::of({2, 2, 4}));
    CHECK(r.verdict.conclusion == Conclusion::never_normally_generated);
    CHECK(r.verdict.reports.empty());  // predicates decide; no numerics ran
    REQUIRE(r.radii.has_value());
    CHECK(r.radii->path == "fast");
    CHECK(r.radii->radius >= 1);
  }
  SUBCASE("numeric row") {
    RunConfig c = cfg_from(R"({"g":3,"preset":"paper-g3"})");
    CheckResult r = run_check(c, PolarizationType::of({1, 1, 16}));
    CHECK(r.verdict.conclusion == Conclusion::two_normal_at_point);
  }
  SUBCASE("numeric row without a period source") {
    RunConfig c = cfg_from(R"({"g":3})");
    CHECK_THROWS_AS(run_check(c, PolarizationType::of({1, 1, 16})), std::invalid_argument);
  }
  SUBCASE("type/g mismatch") {
    RunConfig c = cfg_from(R"({"g":3,"preset":"paper-g3"})");
    CHECK_THROWS_AS(run_check(c, PolarizationType::of({2, 4})), std::invalid_argument);
  }
}

TEST_CASE("scans") {
  SUBCASE("g=1 predicate-only scan") {
    RunConfig c = cfg_from(R"({"g":1,"min_h0":3,"max_h0":10})");
    ScanResult r = run_scan(c);
    REQUIRE(r.rows.size() == 8);
    CHECK(exceptional_set(r).empty());
    CHECK(ambiguous_set(r).empty());
    for (const auto& row : r.rows)
      CHECK(row.verdict.conclusion == Conclusion::normally_generated_generic_evidence);
    CHECK_FALSE(r.radii.has_value());
    CHECK(r.config.min_h0 == 3);  // bounds are resolved into the stored config
  }
  SUBCASE("default g=1 range is empty") {
    RunConfig c = cfg_from(R"({"g":1})");
    CHECK_THROWS_AS(run_scan(c), std::invalid_argument);
  }
  SUBCASE("rows are sorted and reports round-trip byte-identically") {
    RunConfig c = cfg_from(R"({"g":2,"seed":11})");
    ScanResult r1 = run_scan(c);
    REQUIRE(r1.rows.size() >= 3);  // (1,7), (1,8), (2,4)
    for (std::size_t i = 1; i < r1.rows.size(); ++i)
      CHECK(r1.rows[i - 1].verdict.type < r1.rows[i].verdict.type);

    std::string d1 = scan_json(r1).dump();
    CHECK(d1.find("wall") == std::string::npos);
    ScanResult r2 = run_scan(parse_run_config(json::parse(scan_json(r1)["config"].dump())));
    CHECK(scan_json(r2).dump() == d1);
  }
  SUBCASE("thread count does not change the output bytes") {
    RunConfig c1 = cfg_from(R"({"g":2,"seed":11,"jobs":1})");
    RunConfig c3 = cfg_from(R"({"g":2,"seed":11,"jobs":3})");
    CHECK(scan_json(run_scan(c1)).dump() == scan_json(run_scan(c3)).dump());
  }
  SUBCASE("forced numerics stay consistent with the predicates") {
    RunConfig c = cfg_from(R"({"g":2,"seed":11,"force_numeric":true})");
    ScanResult r = run_scan(c);
    ordered_json j = scan_json(r);
    bool saw_fail_row = false;
    for (const auto& row : j["rows"]) {
      if (row["predicates"]["fail1"] == true || row["predicates"]["fail2"] == true) {
        saw_fail_row = true;
        CHECK(row["verdict"] == "never_normally_generated");
        REQUIRE(!row["numeric"].empty());
        bool any_deficient = false;
        for (const auto& n : row["numeric"])
          if (n["status"] == "deficient") any_deficient = true;
        CHECK(any_deficient);
      }
    }
    CHECK(saw_fail_row);
  }
}

TEST_CASE("report and summary serialization") {
  RunConfig c = cfg_from(R"({"g":3,"preset":"paper-g3"})");
  CheckResult r = run_check(c, PolarizationType::of({1, 2, 8}));
  ordered_json j = report_json(r.verdict, c, r.radii);

  CHECK(j["type"] == "(1,2,8)");
  CHECK(j["h0"] == 16);
  CHECK(j["predicates"]["necessary"] == true);
  CHECK(j["predicates"]["fail1"] == false);
  CHECK(j["predicates"]["fail2"] == true);
  CHECK(j["predicates"]["iyer"] == false);
  CHECK(j["verdict"] == "never_normally_generated");
  CHECK(j["provenance"]["preset"] == "paper-g3");
  CHECK(j["provenance"]["tolerances"]["series_tol"] == 1e-12);
  CHECK(j["provenance"]["radii"]["path"] == "fast");

  RunConfig cn = cfg_from(R"({"g":3,"preset":"paper-g3"})");
  CheckResult rn = run_check(cn, PolarizationType::of({1, 1, 16}));
  ordered_json jn = report_json(rn.verdict, cn, rn.radii);
  REQUIRE(jn["numeric"].size() == 2);  // I' of (1,1,16) is {0, (0,0,1/2)}
  const auto& entry = jn["numeric"][0];
  CHECK(entry["w"] == "0,0,0");
  CHECK(entry["sigma"].size() == 8);  // every spectrum is recorded in full
  CHECK(entry["rank"] == 8);
  CHECK(entry["status"] == "full");
  CHECK(entry["gap"].get<double>() > 0);
}

TEST_CASE("csv output") {
  CHECK(csv_header() ==
        "type,h0,necessary,fail1,fail2,iyer,ranks,gaps,statuses,verdict,notes");

  SUBCASE("quoting") {
    Verdict v;
    v.type = PolarizationType::of({2, 4});
    v.conclusion = Conclusion::never_normally_generated;
    v.notes = {"a,b", "c\"d"};
    std::string row = csv_row(v);
    CHECK(row.find("\"(2,4)\"") == 0);
    CHECK(row.find("\"a,b; c\"\"d\"") != std::string::npos);
  }
  SUBCASE("deterministic scan body") {
    RunConfig c = cfg_from(R"({"g":2,"seed":11,"format":"csv"})");
    ScanResult r = run_scan(c);
    std::string s1 = scan_csv(r);
    std::string s2 = scan_csv(run_scan(c));
    CHECK(s1 == s2);
    CHECK(s1.rfind('\n') == s1.size() - 1);
    CHECK(s1.find('\r') == std::string::npos);
    CHECK(std::count(s1.begin(), s1.end(), '\n') ==
          static_cast<long>(r.rows.size()) + 1);
    CHECK(s1.compare(0, csv_header().size(), csv_header()) == 0);
  }
}

TEST_CASE("summary classification") {
  ScanResult r;
  auto add = [&](std::vector<int> d, Conclusion c) {
    ScanRow row;
    row.verdict.type = PolarizationType::of(std::move(d));
    row.verdict.conclusion = c;
    r.rows.push_back(std::move(row));
  };
  add({1, 1, 15}, Conclusion::two_normal_at_point);
  add({1, 2, 8}, Conclusion::not_two_normal_at_point);
  add({2, 2, 4}, Conclusion::never_normally_generated);
  add({1, 1, 49}, Conclusion::normally_generated_generic_evidence);
  add({1, 1, 17}, Conclusion::indeterminate);
  CHECK(exceptional_set(r) == std::vector<std::string>{"(1,2,8)", "(2,2,4)"});
  CHECK(ambiguous_set(r) == std::vector<std::string>{"(1,1,17)"});
}

TEST_CASE("invariant serialization") {
  std::vector<InvariantResult> rs = {
      {"parity[g=1]", 120, 1e-14, 1e-11, true},
      {"anchor[g=1]", 1, 0.0, 1e-12, true},
  };
  ordered_json j = invariants_json(rs);
  CHECK(j["invariants"].size() == 2);
  CHECK(j["invariants"][0]["name"] == "parity[g=1]");
  CHECK(j["pass"] == true);
  rs[1].pass = false;
  CHECK(invariants_json(rs)["pass"] == false);
}
