#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "fixtures.hpp"
#include "galseq/config.hpp"
#include "galseq/sequences.hpp"

using namespace galseq;

namespace {

std::string msg_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const input_error& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("minimal config fills defaults") {
    JobConfig cfg = parse_config(R"({"field": {"polynomial": [-1, -1, 1]}})");
    REQUIRE(cfg.schemaVersion == 1);
    REQUIRE_FALSE(cfg.baseForm);
    REQUIRE(cfg.polynomial == fixtures::poly_from_ints({-1, -1, 1}));
    REQUIRE(cfg.format == "table");
    REQUIRE(cfg.trialBound == 1000000);
    REQUIRE_FALSE(cfg.trialBoundSet);
    REQUIRE(cfg.factorSeed == 1);
    REQUIRE(cfg.precisionStart == 256);
    REQUIRE_FALSE(cfg.automorphisms.has_value());
    REQUIRE_FALSE(cfg.classOrder.has_value());
}

TEST_CASE("base polynomial with generator expression") {
    JobConfig cfg = parse_config(R"({
        "schemaVersion": 1,
        "field": {"basePolynomial": [-1, -3, 0, 1], "generator": [1, 1]},
        "seeds": {"factor": 7},
        "precision": {"start": 128, "cap": 8192},
        "trialDivisionBound": 5000,
        "format": "json"
    })");
    REQUIRE(cfg.baseForm);
    REQUIRE(cfg.generator.size() == 2);
    REQUIRE(cfg.factorSeed == 7);
    REQUIRE(cfg.precisionStart == 128);
    REQUIRE(cfg.precisionCap == 8192);
    REQUIRE(cfg.trialBound == 5000);
    REQUIRE(cfg.trialBoundSet);
    REQUIRE(cfg.format == "json");

    JobContext ctx = build_context(cfg);
    REQUIRE(ctx.field->degree() == 3);
    REQUIRE(ctx.xi == ctx.field->one() + ctx.field->gen());
    REQUIRE(translate_char_poly(ctx.gg, ctx.xi) == fixtures::poly_from_ints({1, 0, -3, 1}));
}

TEST_CASE("rational parsing accepts strings and rejects floats") {
    JobConfig cfg = parse_config(
        R"({"field": {"basePolynomial": [-1, -1, 1], "generator": ["1/2", "-3"]}})");
    REQUIRE(cfg.generator[0] == Rational(Integer(1), Integer(2)));
    REQUIRE(cfg.generator[1] == Rational(-3));

    REQUIRE(msg_of(R"({"field": {"polynomial": [-1, -1, 1.5]}})") ==
            "config: field.polynomial[2]: expected an integer or a \"num/den\" string");
    REQUIRE(msg_of(R"({"field": {"basePolynomial": [-1,-1,1], "generator": ["2/"]}})")
                .find("malformed rational") != std::string::npos);
    REQUIRE(msg_of(R"({"field": {"basePolynomial": [-1,-1,1], "generator": ["1/0"]}})")
                .find("malformed rational") != std::string::npos);
}

TEST_CASE("field block shape is enforced") {
    // Exactly one of the two forms.
    REQUIRE(msg_of(R"({"field": {}})").find("exactly one") != std::string::npos);
    REQUIRE(msg_of(R"({"field": {"polynomial": [-1,-1,1], "basePolynomial": [-1,-1,1],
                     "generator": [1]}})")
                .find("exactly one") != std::string::npos);
    REQUIRE(msg_of(R"({"field": {"polynomial": [-1,-1,1], "generator": [1]}})")
                .find("only valid with basePolynomial") != std::string::npos);
    REQUIRE(msg_of(R"({"field": {"basePolynomial": [-1,-1,1]}})")
                .find("required with basePolynomial") != std::string::npos);
    REQUIRE(msg_of(R"({})").find("field") != std::string::npos);

    // Monicity and integrality of the modulus.
    REQUIRE(msg_of(R"({"field": {"polynomial": [-1, -1, 2]}})")
                .find("leading coefficient must be 1") != std::string::npos);
    REQUIRE(msg_of(R"({"field": {"polynomial": ["1/2", 1]}})")
                .find("expected an integer") != std::string::npos);
    REQUIRE(msg_of(R"({"field": {"polynomial": [1]}})")
                .find("at least two coefficients") != std::string::npos);
}

TEST_CASE("schema strictness") {
    REQUIRE(msg_of(R"({"field": {"polynomial": [-1,-1,1]}, "extra": 1})")
                .find("unknown field") != std::string::npos);
    REQUIRE(msg_of(R"({"field": {"polynomial": [-1,-1,1], "bogus": 2}})")
                .find("field.bogus") != std::string::npos);
    REQUIRE(msg_of(R"({"schemaVersion": 2, "field": {"polynomial": [-1,-1,1]}})")
                .find("unsupported version") != std::string::npos);
    REQUIRE(msg_of(R"([1, 2])").find("expected a JSON object") != std::string::npos);
    REQUIRE(msg_of("not json at all").find("not valid JSON") != std::string::npos);
    REQUIRE(msg_of(R"({"field": {"polynomial": [-1,-1,1]}, "format": "xml"})")
                .find("\"table\" or \"json\"") != std::string::npos);
    REQUIRE(msg_of(R"({"field": {"polynomial": [-1,-1,1]}, "trialDivisionBound": 1})")
                .find("at least 2") != std::string::npos);
    REQUIRE(msg_of(R"({"field": {"polynomial": [-1,-1,1]},
                     "precision": {"start": 512, "cap": 256}})")
                .find("at least precision.start") != std::string::npos);
}

TEST_CASE("explicit automorphisms bypass discovery") {
    JobConfig cfg = parse_config(R"({
        "field": {"polynomial": [-1, -1, 1]},
        "automorphisms": [[0, 1], [1, -1]]
    })");
    REQUIRE(cfg.automorphisms.has_value());
    JobContext ctx = build_context(cfg);
    REQUIRE(ctx.gg.order() == 2);
    REQUIRE(ctx.gg.apply(1, ctx.xi) == ctx.field->one() - ctx.field->gen());

    // A corrupted image is rejected exactly, not trusted.
    JobConfig bad = parse_config(R"({
        "field": {"polynomial": [-1, -1, 1]},
        "automorphisms": [[0, 1], [0, 2]]
    })");
    REQUIRE_THROWS_AS(build_context(bad), not_a_root_error);
}

TEST_CASE("class order override reaches the group") {
    JobConfig cfg = parse_config(R"({
        "field": {"basePolynomial": [-1, -3, 0, 1], "generator": [1, 1]},
        "classOrder": [0, 2, 1]
    })");
    JobContext ctx = build_context(cfg);
    REQUIRE(ctx.gg.group.class_count() == 3);

    JobConfig plain = parse_config(
        R"({"field": {"basePolynomial": [-1, -3, 0, 1], "generator": [1, 1]}})");
    JobContext base = build_context(plain);
    // The override swaps the two non-identity singleton classes.
    REQUIRE(ctx.gg.images[1] == base.gg.images[2]);
    REQUIRE(ctx.gg.images[2] == base.gg.images[1]);

    JobConfig repeat = parse_config(R"({
        "field": {"basePolynomial": [-1, -3, 0, 1], "generator": [1, 1]},
        "classOrder": [0, 1, 1]
    })");
    REQUIRE_THROWS_AS(build_context(repeat), input_error);
}

TEST_CASE("config file loading") {
    REQUIRE_THROWS_AS(load_config_file("/nonexistent/path.json"), input_error);
}
