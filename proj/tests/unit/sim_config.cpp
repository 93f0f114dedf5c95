#include <doctest.h>

#include "mlkpz/sim_config.hpp"

using namespace mlkpz;

TEST_SUITE("sim_config") {
  TEST_CASE("defaults and derived quantities") {
    const SimConfig cfg = parse_config("");
    CHECK(cfg.layers == 1);
    CHECK(cfg.grid == 128);
    CHECK(cfg.dx() == doctest::Approx(1.0 / 128));
    CHECK(cfg.dt() == doctest::Approx(cfg.dt_factor * cfg.dx() * cfg.dx()));
    CHECK(cfg.epsilon_physical() == doctest::Approx(cfg.epsilon / cfg.grid));
  }

  TEST_CASE("parsing") {
    const SimConfig cfg = parse_config(
        "# comment\n"
        "layers = 3\n"
        "grid = 64   # trailing comment\n"
        "mode = wick_only\n"
        "study_ladder = 8, 4, 2\n"
        "study_modes = none,full\n"
        "hopf_cole = yes\n");
    CHECK(cfg.layers == 3);
    CHECK(cfg.grid == 64);
    CHECK(cfg.mode == RenormMode::WickOnly);
    CHECK(cfg.study_ladder == std::vector<double>{8, 4, 2});
    CHECK(cfg.study_modes == std::vector<RenormMode>{RenormMode::None, RenormMode::Full});
    CHECK(cfg.hopf_cole);
  }

  TEST_CASE("round trip through the text form") {
    SimConfig cfg;
    cfg.layers = 2;
    cfg.horizon = 0.0375;
    cfg.seed = 99;
    cfg.initial = InitialProfile::Sine;
    cfg.study_ladder = {16, 8, 4};
    const SimConfig back = parse_config(format_config(cfg));
    CHECK(format_config(back) == format_config(cfg));
  }

  TEST_CASE("rejections") {
    CHECK_THROWS_AS(parse_config("colour = red\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("layers\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("layers = two\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("layers = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("dt_factor = 2.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("epsilon = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("grid = 64\nepsilon = 32\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("mode = half\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("study_ladder = 4, 8, 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("study_ladder = 8, 4\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("study_samples = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("mollifier = gaussian\n"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/file.cfg"), ConfigError);
  }
}
