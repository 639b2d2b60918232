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

#include "islr/quadratic_model.hpp"

#include <algorithm>

namespace islr {

namespace {

std::uint64_t pair_key(int u, int v) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) | static_cast<std::uint32_t>(v);
}

void check_value(Domain d, int x, std::size_t i) {
    const bool ok = d == Domain::spin ? (x == 1 || x == -1) : (x == 0 || x == 1);
    if (!ok) {
        throw ContractError("value " + std::to_string(x) + " of variable " + std::to_string(i) + " is not in the " +
                            to_string(d) + " domain");
    }
}

}  // namespace

std::string to_string(Domain d) { return d == Domain::spin ? "spin" : "binary"; }

Domain domain_from_string(const std::string& text) {
    if (text == "spin") return Domain::spin;
    if (text == "binary") return Domain::binary;
    throw DomainError("unknown domain '" + text + "', expected spin or binary");
}

Assignment::Assignment(Domain domain, std::vector<std::int8_t> values)
        : domain_(domain), values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i) check_value(domain_, values_[i], i);
}

Assignment Assignment::from_bits(Domain domain, std::size_t num_vars, std::uint64_t mask) {
    const std::int8_t off = domain == Domain::spin ? -1 : 0;
    std::vector<std::int8_t> values(num_vars, off);
    for (std::size_t i = 0; i < num_vars; ++i) {
        if ((mask >> i) & 1U) values[i] = 1;
    }
    return {domain, std::move(values)};
}

double QuadraticModel::quadratic(int u, int v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(quadratic_.begin(), quadratic_.end(), std::pair{u, v},
                               [](const QuadraticTerm& t, const std::pair<int, int>& key) {
                                   return std::pair{t.u, t.v} < key;
                               });
    return (it != quadratic_.end() && it->u == u && it->v == v) ? it->coeff : 0.0;
}

std::size_t QuadraticModel::num_linear_terms() const {
    return static_cast<std::size_t>((linear_.array() != 0.0).count());
}

std::string QuadraticModel::meta(const std::string& key) const {
    auto it = metadata_.find(key);
    return it == metadata_.end() ? std::string{} : it->second;
}

QuadraticModel QuadraticModel::with_metadata(std::map<std::string, std::string> extra) const {
    QuadraticModel out = *this;
    for (auto& [k, v] : extra) out.metadata_[k] = std::move(v);
    return out;
}

ModelBuilder::ModelBuilder(Domain domain, int num_vars) : domain_(domain), linear_(Eigen::VectorXd::Zero(num_vars)) {
    if (num_vars < 0) throw ContractError("negative variable count");
}

void ModelBuilder::check_var(int i) const {
    if (i < 0 || i >= num_vars()) {
        throw ContractError("variable index " + std::to_string(i) + " outside [0, " + std::to_string(num_vars()) + ")");
    }
}

ModelBuilder& ModelBuilder::add_offset(double c) {
    offset_ += c;
    return *this;
}

ModelBuilder& ModelBuilder::add_linear(int i, double c) {
    check_var(i);
    linear_(i) += c;
    return *this;
}

ModelBuilder& ModelBuilder::add_quadratic(int u, int v, double c) {
    check_var(u);
    check_var(v);
    if (u == v) {
        return domain_ == Domain::spin ? add_offset(c) : add_linear(u, c);
    }
    if (u > v) std::swap(u, v);
    quadratic_[pair_key(u, v)] += c;
    return *this;
}

ModelBuilder& ModelBuilder::add_squared(std::span<const std::pair<int, double>> terms, double constant,
                                        double weight) {
    std::map<int, double> merged;
    for (auto [i, w] : terms) merged[i] += w;
    add_offset(weight * constant * constant);
    for (auto it = merged.begin(); it != merged.end(); ++it) {
        add_linear(it->first, weight * 2.0 * constant * it->second);
        add_quadratic(it->first, it->first, weight * it->second * it->second);
        for (auto jt = std::next(it); jt != merged.end(); ++jt) {
            add_quadratic(it->first, jt->first, weight * 2.0 * it->second * jt->second);
        }
    }
    return *this;
}

ModelBuilder& ModelBuilder::add_model(const QuadraticModel& other, double weight) {
    if (other.domain() != domain_) throw ContractError("cannot add models over different domains");
    if (other.num_vars() != num_vars()) {
        throw ContractError("cannot add a model over " + std::to_string(other.num_vars()) + " variables to one over " +
                            std::to_string(num_vars()));
    }
    offset_ += weight * other.offset();
    linear_ += weight * other.linear();
    for (const auto& t : other.quadratic()) quadratic_[pair_key(t.u, t.v)] += weight * t.coeff;
    return *this;
}

ModelBuilder& ModelBuilder::set_meta(const std::string& key, std::string value) {
    metadata_[key] = std::move(value);
    return *this;
}

QuadraticModel ModelBuilder::build() const {
    QuadraticModel m;
    m.domain_ = domain_;
    m.offset_ = offset_;
    m.linear_ = linear_;
    m.metadata_ = metadata_;
    m.quadratic_.reserve(quadratic_.size());
    for (const auto& [key, c] : quadratic_) {
        if (c == 0.0) continue;
        m.quadratic_.push_back({static_cast<int>(key >> 32), static_cast<int>(key & 0xffffffffU), c});
    }
    std::sort(m.quadratic_.begin(), m.quadratic_.end(),
              [](const QuadraticTerm& a, const QuadraticTerm& b) { return std::pair{a.u, a.v} < std::pair{b.u, b.v}; });
    return m;
}

double energy(const QuadraticModel& m, const Assignment& a) {
    if (a.domain() != m.domain()) {
        throw ContractError("assignment is over the " + to_string(a.domain()) + " domain, model over " +
                            to_string(m.domain()));
    }
    if (a.size() != static_cast<std::size_t>(m.num_vars())) {
        throw ContractError("assignment has " + std::to_string(a.size()) + " values, model has " +
                            std::to_string(m.num_vars()) + " variables");
    }
    double e = m.offset();
    for (int i = 0; i < m.num_vars(); ++i) e += m.linear(i) * a[static_cast<std::size_t>(i)];
    for (const auto& t : m.quadratic()) {
        e += t.coeff * a[static_cast<std::size_t>(t.u)] * a[static_cast<std::size_t>(t.v)];
    }
    return e;
}

QuadraticModel to_binary_domain(const QuadraticModel& m) {
    if (m.domain() == Domain::binary) return m;
    // s = 2b - 1
    ModelBuilder b(Domain::binary, m.num_vars());
    b.add_offset(m.offset());
    for (int i = 0; i < m.num_vars(); ++i) {
        b.add_offset(-m.linear(i));
        b.add_linear(i, 2.0 * m.linear(i));
    }
    for (const auto& t : m.quadratic()) {
        b.add_offset(t.coeff);
        b.add_linear(t.u, -2.0 * t.coeff);
        b.add_linear(t.v, -2.0 * t.coeff);
        b.add_quadratic(t.u, t.v, 4.0 * t.coeff);
    }
    for (const auto& [k, v] : m.metadata()) b.set_meta(k, v);
    return b.build();
}

QuadraticModel to_spin_domain(const QuadraticModel& m) {
    if (m.domain() == Domain::spin) return m;
    // b = (s + 1) / 2
    ModelBuilder b(Domain::spin, m.num_vars());
    b.add_offset(m.offset());
    for (int i = 0; i < m.num_vars(); ++i) {
        b.add_offset(0.5 * m.linear(i));
        b.add_linear(i, 0.5 * m.linear(i));
    }
    for (const auto& t : m.quadratic()) {
        b.add_offset(0.25 * t.coeff);
        b.add_linear(t.u, 0.25 * t.coeff);
        b.add_linear(t.v, 0.25 * t.coeff);
        b.add_quadratic(t.u, t.v, 0.25 * t.coeff);
    }
    for (const auto& [k, v] : m.metadata()) b.set_meta(k, v);
    return b.build();
}

Assignment to_binary_domain(const Assignment& a) {
    if (a.domain() == Domain::binary) return a;
    std::vector<std::int8_t> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = static_cast<std::int8_t>((a[i] + 1) / 2);
    return {Domain::binary, std::move(out)};
}

Assignment to_spin_domain(const Assignment& a) {
    if (a.domain() == Domain::spin) return a;
    std::vector<std::int8_t> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = static_cast<std::int8_t>(2 * a[i] - 1);
    return {Domain::spin, std::move(out)};
}

QuadraticModel add_scaled(const QuadraticModel& m, const QuadraticModel& other, double weight) {
    ModelBuilder b(m.domain(), m.num_vars());
    b.add_model(m).add_model(other, weight);
    for (const auto& [k, v] : m.metadata()) b.set_meta(k, v);
    return b.build();
}

}  // namespace islr
