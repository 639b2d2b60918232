// Copyright 2026 The islr-qubo Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "islr/quadratic_model.hpp"

namespace islr {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

template <typename T>
T parse_number(std::string_view tok, std::size_t line, const char* what) {
    T value{};
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
        throw ParseError(line, std::string("invalid ") + what + " '" + std::string(tok) + "'");
    }
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(value)) throw ParseError(line, std::string("non-finite ") + what);
    }
    return value;
}

}  // namespace

std::string format_real(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return {buf, res.ptr};
}

std::string format_short(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
    return buf;
}

std::string export_model(const QuadraticModel& m) {
    std::ostringstream out;
    out << "# islr-qubo model\n";
    for (const auto& [k, v] : m.metadata()) out << "# meta " << k << ' ' << v << '\n';
    out << "p qubo " << to_string(m.domain()) << ' ' << m.num_vars() << ' ' << m.num_linear_terms() << ' '
        << m.num_interactions() << '\n';
    out << "c offset " << format_real(m.offset()) << '\n';
    for (int i = 0; i < m.num_vars(); ++i) {
        if (m.linear(i) != 0.0) out << i << ' ' << i << ' ' << format_real(m.linear(i)) << '\n';
    }
    for (const auto& t : m.quadratic()) out << t.u << ' ' << t.v << ' ' << format_real(t.coeff) << '\n';
    return out.str();
}

QuadraticModel import_model(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    bool have_header = false;
    bool have_offset = false;
    Domain domain = Domain::spin;
    int num_vars = 0;
    std::size_t want_linear = 0, want_quadratic = 0;
    std::map<std::string, std::string> meta;
    std::vector<std::pair<int, double>> linear;
    std::vector<QuadraticTerm> quad;
    std::set<std::pair<int, int>> seen;
    double offset = 0.0;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line(raw);
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            std::string_view comment = line.substr(hash + 1);
            auto toks = split_ws(comment);
            if (hash == 0 && toks.size() >= 2 && toks[0] == "meta") {
                // value is everything after the key, verbatim
                const auto key_end = static_cast<std::size_t>(toks[1].data() - comment.data()) + toks[1].size();
                std::string_view value = comment.substr(key_end);
                while (!value.empty() && value.front() == ' ') value.remove_prefix(1);
                while (!value.empty() && (value.back() == ' ' || value.back() == '\r')) value.remove_suffix(1);
                meta[std::string(toks[1])] = std::string(value);
            }
            line = line.substr(0, hash);
        }
        auto toks = split_ws(line);
        if (toks.empty()) continue;

        if (!have_header) {
            if (toks.size() != 6 || toks[0] != "p" || toks[1] != "qubo") {
                throw ParseError(line_no, "expected header 'p qubo <spin|binary> <num_vars> <num_linear> <num_quadratic>'");
            }
            try {
                domain = domain_from_string(std::string(toks[2]));
            } catch (const DomainError& e) {
                throw ParseError(line_no, e.what());
            }
            num_vars = parse_number<int>(toks[3], line_no, "variable count");
            want_linear = parse_number<std::size_t>(toks[4], line_no, "linear term count");
            want_quadratic = parse_number<std::size_t>(toks[5], line_no, "quadratic term count");
            if (num_vars < 0) throw ParseError(line_no, "negative variable count");
            have_header = true;
            continue;
        }
        if (toks[0] == "c") {
            if (toks.size() != 3 || toks[1] != "offset") throw ParseError(line_no, "expected 'c offset <value>'");
            if (have_offset) throw ParseError(line_no, "duplicate offset line");
            offset = parse_number<double>(toks[2], line_no, "offset");
            have_offset = true;
            continue;
        }
        if (toks.size() != 3) throw ParseError(line_no, "expected '<i> <j> <coeff>'");
        const int u = parse_number<int>(toks[0], line_no, "variable index");
        const int v = parse_number<int>(toks[1], line_no, "variable index");
        const double c = parse_number<double>(toks[2], line_no, "coefficient");
        if (u < 0 || v < 0 || u >= num_vars || v >= num_vars) {
            throw ParseError(line_no, "variable index outside [0, " + std::to_string(num_vars) + ")");
        }
        if (u > v) throw ParseError(line_no, "pair indices must satisfy i <= j");
        if (!seen.insert({u, v}).second) {
            throw ParseError(line_no, "duplicate term for (" + std::to_string(u) + ", " + std::to_string(v) + ")");
        }
        if (u == v) {
            linear.emplace_back(u, c);
        } else {
            quad.push_back({u, v, c});
        }
    }
    if (!have_header) throw ParseError(line_no, "missing 'p qubo' header");
    if (linear.size() != want_linear) {
        throw ParseError(line_no, "header declares " + std::to_string(want_linear) + " linear terms, found " +
                                      std::to_string(linear.size()));
    }
    if (quad.size() != want_quadratic) {
        throw ParseError(line_no, "header declares " + std::to_string(want_quadratic) + " quadratic terms, found " +
                                      std::to_string(quad.size()));
    }

    ModelBuilder b(domain, num_vars);
    b.add_offset(offset);
    for (auto [i, c] : linear) b.add_linear(i, c);
    for (const auto& t : quad) b.add_quadratic(t.u, t.v, t.coeff);
    for (auto& [k, v] : meta) b.set_meta(k, std::move(v));
    return b.build();
}

std::string export_model_json(const QuadraticModel& m) {
    nlohmann::ordered_json j;
    j["format"] = "islr-qubo-model";
    j["schema_version"] = 1;
    j["domain"] = to_string(m.domain());
    j["num_vars"] = m.num_vars();
    j["offset"] = m.offset();
    auto& lin = j["linear"] = nlohmann::ordered_json::array();
    for (int i = 0; i < m.num_vars(); ++i) {
        if (m.linear(i) != 0.0) lin.push_back({i, m.linear(i)});
    }
    auto& quad = j["quadratic"] = nlohmann::ordered_json::array();
    for (const auto& t : m.quadratic()) quad.push_back({t.u, t.v, t.coeff});
    j["metadata"] = m.metadata();
    return j.dump(2) + "\n";
}

QuadraticModel import_model_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
        ModelBuilder b(domain_from_string(j.at("domain").get<std::string>()), j.at("num_vars").get<int>());
        b.add_offset(j.at("offset").get<double>());
        std::set<std::pair<int, int>> seen;
        for (const auto& t : j.at("linear")) {
            const int i = t.at(0).get<int>();
            if (!seen.insert({i, i}).second) throw ParseError(0, "duplicate linear term " + std::to_string(i));
            b.add_linear(i, t.at(1).get<double>());
        }
        for (const auto& t : j.at("quadratic")) {
            const int u = t.at(0).get<int>(), v = t.at(1).get<int>();
            if (u >= v) throw ParseError(0, "quadratic pair must satisfy i < j");
            if (!seen.insert({u, v}).second) throw ParseError(0, "duplicate quadratic term");
            b.add_quadratic(u, v, t.at(2).get<double>());
        }
        if (j.contains("metadata")) {
            for (const auto& [k, v] : j["metadata"].items()) b.set_meta(k, v.get<std::string>());
        }
        return b.build();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, std::string("malformed model JSON: ") + e.what());
    } catch (const ContractError& e) {
        throw ParseError(0, e.what());
    }
}

}  // namespace islr
