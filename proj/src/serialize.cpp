#include "usnc/serialize.hpp"

#include <fstream>
#include <sstream>

namespace usnc::serialize {

ordered_json matrix_to_json(const gf::Matrix& m) {
    ordered_json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["codes"] = m.codes();
    return j;
}

gf::Matrix matrix_from_json(const gf::FieldSpecPtr& spec, const ordered_json& j) {
    try {
        const size_t rows = j.at("rows").get<size_t>();
        const size_t cols = j.at("cols").get<size_t>();
        const std::vector<uint64_t> codes = j.at("codes").get<std::vector<uint64_t>>();
        return gf::Matrix::from_codes(spec, rows, cols, codes);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("malformed matrix JSON: ") + e.what());
    }
}

ordered_json scenario_to_json(const netcode::Scenario& sc) {
    ordered_json j;
    j["field"] = sc.field->to_string();
    j["m"] = sc.m;
    j["n"] = sc.n;
    j["T"] = sc.T;
    j["k"] = sc.k;
    return j;
}

netcode::Scenario scenario_from_json(const ordered_json& j) {
    try {
        auto field = gf::FieldSpec::parse(j.at("field").get<std::string>());
        return netcode::Scenario::make(std::move(field), j.at("m").get<uint32_t>(),
                                       j.at("n").get<uint32_t>(),
                                       j.at("T").get<uint32_t>(),
                                       j.at("k").get<std::vector<uint32_t>>());
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("malformed scenario JSON: ") + e.what());
    }
}

ordered_json packetset_to_json(const netcode::PacketSet& ps) {
    return ordered_json(ps.packets);
}

namespace {

std::string hex_code(uint64_t code) {
    std::ostringstream out;
    out << std::hex << code;
    return out.str();
}

}  // namespace

ordered_json dist_to_json(const infoprob::MessageDist& dist) {
    ordered_json j;
    switch (dist.form()) {
        case infoprob::DistForm::Uniform:
            j["form"] = "uniform";
            break;
        case infoprob::DistForm::Product: {
            j["form"] = "product";
            ordered_json tables = ordered_json::array();
            for (const auto& t : dist.raw_tables()) {
                ordered_json table = ordered_json::array();
                for (const Rational& p : t) table.push_back(rational_str(p));
                tables.push_back(std::move(table));
            }
            j["tables"] = std::move(tables);
            break;
        }
        case infoprob::DistForm::Table: {
            j["form"] = "table";
            ordered_json probs = ordered_json::object();
            for (const auto& [code, p] : dist.raw_table())
                probs[hex_code(code)] = rational_str(p);
            j["probs"] = std::move(probs);
            break;
        }
    }
    return j;
}

infoprob::MessageDist dist_from_json(const netcode::Scenario& sc,
                                     const ordered_json& j) {
    try {
        const std::string form = j.at("form").get<std::string>();
        if (form == "uniform") return infoprob::MessageDist::uniform(sc);
        if (form == "product") {
            std::vector<std::vector<Rational>> tables;
            for (const auto& t : j.at("tables")) {
                std::vector<Rational> table;
                for (const auto& p : t)
                    table.push_back(rational_from_str(p.get<std::string>()));
                tables.push_back(std::move(table));
            }
            return infoprob::MessageDist::product(sc, std::move(tables));
        }
        if (form == "table") {
            std::map<uint64_t, Rational> probs;
            for (const auto& [key, val] : j.at("probs").items())
                probs[std::stoull(key, nullptr, 16)] =
                    rational_from_str(val.get<std::string>());
            return infoprob::MessageDist::table(sc, std::move(probs));
        }
        throw UsageError("unknown distribution form: " + form);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("malformed distribution JSON: ") + e.what());
    } catch (const std::invalid_argument&) {
        throw UsageError("malformed outcome key in distribution JSON");
    }
}

ordered_json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open file: " + path);
    try {
        return ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("cannot parse JSON in " + path + ": " + e.what());
    }
}

}  // namespace usnc::serialize
