#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "galseq/galois.hpp"
#include "galseq/numberfield.hpp"

namespace galseq {

// A fully validated job description.  The field is given either directly by
// a monic integer polynomial (the sequence generator is then the class of x)
// or by a base polynomial together with a generator expression whose
// coefficients describe xi as a polynomial in the base root.
struct JobConfig {
    int schemaVersion = 1;
    PolyQ polynomial;
    PolyQ basePolynomial;
    std::vector<Rational> generator;
    bool baseForm = false;
    std::optional<std::vector<std::vector<Rational>>> automorphisms;
    std::optional<std::vector<int>> classOrder;
    std::uint64_t factorSeed = 1;
    unsigned long precisionStart = 256;
    unsigned long precisionCap = 1048576;
    std::uint64_t trialBound = 1000000;
    bool trialBoundSet = false;
    int symbolicCap = 8;
    std::string format = "table";
};

namespace detail {

[[noreturn]] inline void config_fail(const std::string& path, const std::string& what) {
    throw input_error("config: " + path + ": " + what);
}

inline Rational json_rational(const nlohmann::json& v, const std::string& path) {
    if (v.is_number_integer() || v.is_number_unsigned())
        return Rational(Integer(static_cast<long>(v.get<long long>())));
    if (v.is_string()) {
        try {
            return Rational::parse(v.get<std::string>());
        } catch (const error&) {
            config_fail(path, "malformed rational \"" + v.get<std::string>() + "\"");
        }
    }
    config_fail(path, "expected an integer or a \"num/den\" string");
}

inline Integer json_integer(const nlohmann::json& v, const std::string& path) {
    Rational r = json_rational(v, path);
    if (!r.is_integer()) config_fail(path, "expected an integer");
    return r.num();
}

inline std::vector<Rational> json_rational_list(const nlohmann::json& v, const std::string& path) {
    if (!v.is_array() || v.empty()) config_fail(path, "expected a nonempty array");
    std::vector<Rational> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(json_rational(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

inline PolyQ json_monic_int_poly(const nlohmann::json& v, const std::string& path) {
    if (!v.is_array() || v.size() < 2) config_fail(path, "expected at least two coefficients");
    std::vector<Rational> coeffs;
    coeffs.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        coeffs.emplace_back(json_integer(v[i], path + "[" + std::to_string(i) + "]"));
    if (coeffs.back() != Rational(1)) config_fail(path, "leading coefficient must be 1");
    return PolyQ(std::move(coeffs));
}

template <class T>
T json_unsigned(const nlohmann::json& v, const std::string& path) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        config_fail(path, "expected a nonnegative integer");
    return static_cast<T>(v.get<unsigned long long>());
}

inline void reject_unknown_keys(const nlohmann::json& obj, const std::string& path,
                                std::initializer_list<const char*> known) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            if (it.key() == k) ok = true;
        if (!ok) config_fail(path.empty() ? it.key() : path + "." + it.key(), "unknown field");
    }
}

} // namespace detail

inline JobConfig parse_config(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw input_error(std::string("config: not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) detail::config_fail("<root>", "expected a JSON object");
    detail::reject_unknown_keys(doc, "",
                                {"schemaVersion", "field", "automorphisms", "classOrder", "seeds",
                                 "precision", "trialDivisionBound", "symbolicCap", "format"});

    JobConfig cfg;
    if (doc.contains("schemaVersion")) {
        if (!doc["schemaVersion"].is_number_integer() || doc["schemaVersion"].get<int>() != 1)
            detail::config_fail("schemaVersion", "unsupported version (this tool reads version 1)");
    }

    if (!doc.contains("field") || !doc["field"].is_object())
        detail::config_fail("field", "required object is missing");
    const nlohmann::json& fld = doc["field"];
    detail::reject_unknown_keys(fld, "field", {"polynomial", "basePolynomial", "generator"});
    const bool direct = fld.contains("polynomial");
    const bool base = fld.contains("basePolynomial");
    if (direct == base)
        detail::config_fail("field", "supply exactly one of polynomial or basePolynomial");
    if (direct) {
        if (fld.contains("generator"))
            detail::config_fail("field.generator", "only valid with basePolynomial");
        cfg.polynomial = detail::json_monic_int_poly(fld["polynomial"], "field.polynomial");
    } else {
        cfg.baseForm = true;
        cfg.basePolynomial =
            detail::json_monic_int_poly(fld["basePolynomial"], "field.basePolynomial");
        if (!fld.contains("generator"))
            detail::config_fail("field.generator", "required with basePolynomial");
        cfg.generator = detail::json_rational_list(fld["generator"], "field.generator");
    }

    if (doc.contains("automorphisms")) {
        const nlohmann::json& a = doc["automorphisms"];
        if (!a.is_array() || a.empty()) detail::config_fail("automorphisms", "expected a nonempty array");
        std::vector<std::vector<Rational>> images;
        images.reserve(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            images.push_back(
                detail::json_rational_list(a[i], "automorphisms[" + std::to_string(i) + "]"));
        cfg.automorphisms = std::move(images);
    }

    if (doc.contains("classOrder")) {
        const nlohmann::json& c = doc["classOrder"];
        if (!c.is_array() || c.empty()) detail::config_fail("classOrder", "expected a nonempty array");
        std::vector<int> order;
        order.reserve(c.size());
        for (std::size_t i = 0; i < c.size(); ++i)
            order.push_back(static_cast<int>(
                detail::json_unsigned<unsigned>(c[i], "classOrder[" + std::to_string(i) + "]")));
        cfg.classOrder = std::move(order);
    }

    if (doc.contains("seeds")) {
        const nlohmann::json& s = doc["seeds"];
        if (!s.is_object()) detail::config_fail("seeds", "expected an object");
        detail::reject_unknown_keys(s, "seeds", {"factor"});
        if (s.contains("factor"))
            cfg.factorSeed = detail::json_unsigned<std::uint64_t>(s["factor"], "seeds.factor");
    }

    if (doc.contains("precision")) {
        const nlohmann::json& p = doc["precision"];
        if (!p.is_object()) detail::config_fail("precision", "expected an object");
        detail::reject_unknown_keys(p, "precision", {"start", "cap"});
        if (p.contains("start"))
            cfg.precisionStart = detail::json_unsigned<unsigned long>(p["start"], "precision.start");
        if (p.contains("cap"))
            cfg.precisionCap = detail::json_unsigned<unsigned long>(p["cap"], "precision.cap");
        if (cfg.precisionStart < 16) detail::config_fail("precision.start", "must be at least 16");
        if (cfg.precisionCap < cfg.precisionStart)
            detail::config_fail("precision.cap", "must be at least precision.start");
    }

    if (doc.contains("trialDivisionBound")) {
        cfg.trialBound =
            detail::json_unsigned<std::uint64_t>(doc["trialDivisionBound"], "trialDivisionBound");
        if (cfg.trialBound < 2) detail::config_fail("trialDivisionBound", "must be at least 2");
        cfg.trialBoundSet = true;
    }

    if (doc.contains("symbolicCap")) {
        cfg.symbolicCap = static_cast<int>(
            detail::json_unsigned<unsigned>(doc["symbolicCap"], "symbolicCap"));
        if (cfg.symbolicCap < 1) detail::config_fail("symbolicCap", "must be positive");
    }

    if (doc.contains("format")) {
        if (!doc["format"].is_string()) detail::config_fail("format", "expected a string");
        cfg.format = doc["format"].get<std::string>();
        if (cfg.format != "table" && cfg.format != "json")
            detail::config_fail("format", "expected \"table\" or \"json\"");
    }

    return cfg;
}

inline JobConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

// The working objects a command needs: the ambient field, its automorphism
// group in canonical (or overridden) class order, and the sequence
// generator xi.
struct JobContext {
    FieldPtr field;
    GaloisGroup gg;
    FieldElement xi;
};

inline JobContext build_context(const JobConfig& cfg) {
    FieldPtr field = NumberField::create(cfg.baseForm ? cfg.basePolynomial : cfg.polynomial);

    std::vector<FieldElement> images;
    if (cfg.automorphisms) {
        images.reserve(cfg.automorphisms->size());
        for (const auto& coeffs : *cfg.automorphisms)
            images.push_back(field->element(PolyQ(coeffs)));
    } else {
        images = discover_automorphisms(field, cfg.precisionStart, cfg.precisionCap);
    }
    GaloisGroup gg = group_close(field, std::move(images), cfg.classOrder);

    FieldElement xi = cfg.baseForm ? field->element(PolyQ(cfg.generator)) : field->gen();
    return JobContext{std::move(field), std::move(gg), std::move(xi)};
}

} // namespace galseq
