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

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "islr/errors.hpp"

namespace islr {

enum class Domain { spin, binary };

std::string to_string(Domain d);
Domain domain_from_string(const std::string& text);

/// One value per variable, each in {-1,+1} (spin) or {0,1} (binary).
class Assignment {
  public:
    Assignment() = default;
    Assignment(Domain domain, std::vector<std::int8_t> values);

    Domain domain() const noexcept { return domain_; }
    std::size_t size() const noexcept { return values_.size(); }
    int operator[](std::size_t i) const { return values_[i]; }
    std::span<const std::int8_t> values() const noexcept { return values_; }

    /// Builds from the low `num_vars` bits of `mask`; bit set means +1 / 1.
    static Assignment from_bits(Domain domain, std::size_t num_vars, std::uint64_t mask);

    friend bool operator==(const Assignment&, const Assignment&) = default;
    friend auto operator<=>(const Assignment& a, const Assignment& b) { return a.values_ <=> b.values_; }

  private:
    Domain domain_ = Domain::spin;
    std::vector<std::int8_t> values_;
};

struct QuadraticTerm {
    int u;
    int v;
    double coeff;
};

/// offset + sum_i linear_i x_i + sum_{u<v} J_uv x_u x_v over spin or binary variables.
///
/// Immutable once built; pair terms are stored once each with u < v, sorted.
/// String metadata travels with the model through serialization.
class QuadraticModel {
  public:
    QuadraticModel() = default;

    Domain domain() const noexcept { return domain_; }
    int num_vars() const noexcept { return static_cast<int>(linear_.size()); }
    double offset() const noexcept { return offset_; }
    const Eigen::VectorXd& linear() const noexcept { return linear_; }
    double linear(int i) const { return linear_(i); }
    std::span<const QuadraticTerm> quadratic() const noexcept { return quadratic_; }
    /// Coefficient of x_u x_v, zero when absent.
    double quadratic(int u, int v) const;
    std::size_t num_interactions() const noexcept { return quadratic_.size(); }
    std::size_t num_linear_terms() const;

    const std::map<std::string, std::string>& metadata() const noexcept { return metadata_; }
    /// Empty string when the key is missing.
    std::string meta(const std::string& key) const;
    QuadraticModel with_metadata(std::map<std::string, std::string> extra) const;

  private:
    friend class ModelBuilder;

    Domain domain_ = Domain::spin;
    double offset_ = 0.0;
    Eigen::VectorXd linear_;
    std::vector<QuadraticTerm> quadratic_;
    std::map<std::string, std::string> metadata_;
};

/// Accumulates coefficients with merge-on-insert. Single owner.
class ModelBuilder {
  public:
    ModelBuilder(Domain domain, int num_vars);

    Domain domain() const noexcept { return domain_; }
    int num_vars() const noexcept { return static_cast<int>(linear_.size()); }

    ModelBuilder& add_offset(double c);
    ModelBuilder& add_linear(int i, double c);
    /// u == v folds into the offset (spin, x^2 = 1) or the linear term (binary, x^2 = x).
    ModelBuilder& add_quadratic(int u, int v, double c);
    /// Adds weight * (constant + sum_t coeff_t x_t)^2, expanded for the domain.
    ModelBuilder& add_squared(std::span<const std::pair<int, double>> terms, double constant, double weight = 1.0);
    ModelBuilder& add_model(const QuadraticModel& other, double weight = 1.0);
    ModelBuilder& set_meta(const std::string& key, std::string value);

    /// Drops pair terms whose merged coefficient is exactly zero.
    QuadraticModel build() const;

  private:
    void check_var(int i) const;

    Domain domain_;
    double offset_ = 0.0;
    Eigen::VectorXd linear_;
    std::unordered_map<std::uint64_t, double> quadratic_;
    std::map<std::string, std::string> metadata_;
};

double energy(const QuadraticModel& m, const Assignment& a);

/// Change of variables s = 2b - 1 (and its inverse); energies agree on corresponding assignments.
QuadraticModel to_binary_domain(const QuadraticModel& m);
QuadraticModel to_spin_domain(const QuadraticModel& m);
Assignment to_binary_domain(const Assignment& a);
Assignment to_spin_domain(const Assignment& a);

/// m + weight * other; metadata of `m` is kept.
QuadraticModel add_scaled(const QuadraticModel& m, const QuadraticModel& other, double weight);

/// Shortest decimal text that parses back to the same double.
std::string format_real(double x);
/// At most `digits` significant digits, for human-readable reports.
std::string format_short(double x, int digits = 10);

/// Line-oriented text format (see README). Metadata lines are "# meta <key> <value>".
std::string export_model(const QuadraticModel& m);
QuadraticModel import_model(const std::string& text);

std::string export_model_json(const QuadraticModel& m);
QuadraticModel import_model_json(const std::string& text);

}  // namespace islr
