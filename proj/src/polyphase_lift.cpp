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

#include "islr/polyphase_lift.hpp"

#include <cmath>
#include <string>
#include <unordered_map>

#include "islr/binary_lift.hpp"

namespace islr::polyphase_lift {

namespace {

void check_shape(Index n, int q) {
    if (n < 2) throw DomainError("sequence length must be at least 2, got " + std::to_string(n));
    if (q < 2) throw DomainError("number of phase states must be at least 2, got " + std::to_string(q));
}

ModelBuilder make_builder(const Layout& layout) {
    return ModelBuilder(Domain::binary, static_cast<int>(layout.num_vars()));
}

constexpr double kImaginaryResidue = 1e-12;
constexpr double kCouplingSupport = 1e-14;

}  // namespace

PhaseMatrix::PhaseMatrix(Index n, int q) : n_(n), q_(q) {
    check_shape(n, q);
    entries_ = Eigen::MatrixXcd::Zero(n, n * q);
    for (Index row = 0; row < n; ++row) {
        for (int s = 0; s < q; ++s) entries_(row, row * q + s) = unit_root(s, q);
    }
}

Layout::Layout(Index n, int q) : n_(n), q_(q) { check_shape(n, q); }

BlockCell Layout::cell(int flat) const {
    if (flat < 0 || flat >= num_vars()) {
        throw DomainError("flat index " + std::to_string(flat) + " outside [0, " + std::to_string(num_vars()) + ")");
    }
    const Index row = flat / width();
    const Index col = flat % width();
    return {row / q_, col / q_, static_cast<int>(row % q_), static_cast<int>(col % q_)};
}

void Weights::validate() const {
    if (!(lambda_oh > 0.0 && lambda_s > 0.0 && lambda_ch > 0.0 && lambda_cv > 0.0)) {
        throw ContractError("poly-phase Lagrange multipliers must be strictly positive");
    }
}

PhaseMatrix phase_matrix(Index n, int q) { return {n, q}; }

Eigen::MatrixXcd coupling_matrix(Index n, int q, Index k) {
    const PhaseMatrix phi(n, q);
    const Eigen::MatrixXcd delay = binary_lift::delay_matrix(n, k).cast<std::complex<double>>();
    return phi.entries().adjoint() * delay * phi.entries();
}

QuadraticModel build_objective(Index n, int q) {
    const Layout layout(n, q);
    const Index w = layout.width();
    // z'^T D' z' with D' = sum_k vec(A^k) conj(vec(A^k))^H, so each k gives |vec(A^k) . z'|^2.
    std::unordered_map<std::uint64_t, std::complex<double>> pairs;
    Eigen::VectorXcd diagonal = Eigen::VectorXcd::Zero(layout.num_vars());
    std::vector<std::pair<int, std::complex<double>>> support;
    for (Index k = -n + 1; k <= n - 1; ++k) {
        if (k == 0) continue;
        const Eigen::MatrixXcd a = coupling_matrix(n, q, k);
        support.clear();
        for (Index r = 0; r < w; ++r) {
            for (Index c = 0; c < w; ++c) {
                if (std::abs(a(r, c)) > kCouplingSupport) support.emplace_back(static_cast<int>(r * w + c), a(r, c));
            }
        }
        for (std::size_t s = 0; s < support.size(); ++s) {
            const auto [p, vp] = support[s];
            diagonal(p) += vp * std::conj(vp);
            for (std::size_t t = s + 1; t < support.size(); ++t) {
                const auto [u, vu] = support[t];
                const std::uint64_t key = (static_cast<std::uint64_t>(p) << 32) | static_cast<std::uint32_t>(u);
                pairs[key] += vp * std::conj(vu) + vu * std::conj(vp);
            }
        }
    }
    ModelBuilder b = make_builder(layout);
    for (Index p = 0; p < layout.num_vars(); ++p) {
        if (std::abs(diagonal(p).imag()) > kImaginaryResidue) {
            throw std::logic_error("poly-phase objective has a complex diagonal coefficient");
        }
        if (diagonal(p).real() != 0.0) b.add_linear(static_cast<int>(p), diagonal(p).real());
    }
    for (const auto& [key, c] : pairs) {
        if (std::abs(c.imag()) > kImaginaryResidue) {
            throw std::logic_error("poly-phase objective has a complex pair coefficient");
        }
        b.add_quadratic(static_cast<int>(key >> 32), static_cast<int>(key & 0xffffffffU), c.real());
    }
    return b.build();
}

QuadraticModel build_onehot(Index n, int q) {
    const Layout layout(n, q);
    ModelBuilder b = make_builder(layout);
    std::vector<std::pair<int, double>> terms;
    for (Index bn = 0; bn < n; ++bn) {
        for (Index bm = 0; bm < n; ++bm) {
            terms.clear();
            for (int i = 0; i < q; ++i) {
                for (int j = 0; j < q; ++j) terms.emplace_back(layout.index(bn, bm, i, j), 1.0);
            }
            b.add_squared(terms, -1.0);
        }
    }
    return b.build();
}

QuadraticModel build_symmetry(Index n, int q) {
    const Layout layout(n, q);
    ModelBuilder b = make_builder(layout);
    for (Index bn = 0; bn < n; ++bn) {
        for (Index bm = bn + 1; bm < n; ++bm) {
            for (int i = 0; i < q; ++i) {
                for (int j = 0; j < q; ++j) {
                    const int u = layout.index(bn, bm, i, j);
                    const int v = layout.index(bm, bn, j, i);
                    b.add_linear(u, 1.0).add_linear(v, 1.0).add_quadratic(u, v, -2.0);
                }
            }
        }
    }
    return b.build();
}

QuadraticModel build_chain_h(Index n, int q) {
    const Layout layout(n, q);
    ModelBuilder b = make_builder(layout);
    std::vector<std::pair<int, double>> terms;
    for (Index bn = 0; bn < n; ++bn) {
        for (int i = 0; i < q; ++i) {
            for (Index bm = 0; bm + 1 < n; ++bm) {
                terms.clear();
                for (int j = 0; j < q; ++j) {
                    terms.emplace_back(layout.index(bn, bm, i, j), 1.0);
                    terms.emplace_back(layout.index(bn, bm + 1, i, j), -1.0);
                }
                b.add_squared(terms, 0.0);
            }
        }
    }
    return b.build();
}

QuadraticModel build_chain_v(Index n, int q) {
    const Layout layout(n, q);
    ModelBuilder b = make_builder(layout);
    std::vector<std::pair<int, double>> terms;
    for (Index bm = 0; bm < n; ++bm) {
        for (int j = 0; j < q; ++j) {
            for (Index bn = 0; bn + 1 < n; ++bn) {
                terms.clear();
                for (int i = 0; i < q; ++i) {
                    terms.emplace_back(layout.index(bn, bm, i, j), 1.0);
                    terms.emplace_back(layout.index(bn + 1, bm, i, j), -1.0);
                }
                b.add_squared(terms, 0.0);
            }
        }
    }
    return b.build();
}

QuadraticModel build_penalties(Index n, int q, const Weights& w, const BuildOptions& opts) {
    w.validate();
    const Layout layout(n, q);
    ModelBuilder b = make_builder(layout);
    b.add_model(build_onehot(n, q), w.lambda_oh);
    if (opts.include_symmetry) b.add_model(build_symmetry(n, q), w.lambda_s);
    b.add_model(build_chain_h(n, q), w.lambda_ch).add_model(build_chain_v(n, q), w.lambda_cv);
    return b.build();
}

QuadraticModel assemble(Index n, int q, const Weights& w, const BuildOptions& opts) {
    w.validate();
    QuadraticModel h = build_objective(n, q);
    h = add_scaled(h, build_onehot(n, q), w.lambda_oh);
    if (opts.include_symmetry) h = add_scaled(h, build_symmetry(n, q), w.lambda_s);
    h = add_scaled(h, build_chain_h(n, q), w.lambda_ch);
    h = add_scaled(h, build_chain_v(n, q), w.lambda_cv);

    std::map<std::string, std::string> meta{
            {"case", opts.include_symmetry ? "polyphase-matched" : "polyphase-mismatched-relaxation"},
            {"n", std::to_string(n)},
            {"q", std::to_string(q)},
            {"energy_scale", "2"},
            {"layout", "z[(n*Q+i)*N*Q + (m*Q+j)] = Z'(n,m)_(i,j), row-major over (NQ)x(NQ)"},
            {"lambda_oh", format_real(w.lambda_oh)},
            {"lambda_ch", format_real(w.lambda_ch)},
            {"lambda_cv", format_real(w.lambda_cv)},
            {"lambda_lower_bound", format_real(lagrange_bounds(n, q).lambda_oh)},
    };
    if (opts.include_symmetry) {
        meta["lambda_s"] = format_real(w.lambda_s);
    } else {
        meta["warning"] = "symmetry penalty removed: mismatched relaxation, no main-lobe guarantee";
    }
    return h.with_metadata(std::move(meta));
}

LagrangeBounds lagrange_bounds(Index n, int q) {
    check_shape(n, q);
    const auto delta = static_cast<double>(max_islr(n));
    return {delta, delta, delta, delta};
}

Eigen::VectorXi one_hot(const PolyphaseSequence& r) {
    Eigen::VectorXi b = Eigen::VectorXi::Zero(r.size() * r.num_states());
    for (Index n = 0; n < r.size(); ++n) b(n * r.num_states() + r[n]) = 1;
    return b;
}

Assignment lift(std::span<const int> b, Index n, int q) {
    const Layout layout(n, q);
    if (static_cast<Index>(b.size()) != layout.width()) {
        throw ContractError("one-hot vector has length " + std::to_string(b.size()) + ", expected " +
                            std::to_string(layout.width()));
    }
    for (Index block = 0; block < n; ++block) {
        int ones = 0;
        for (int s = 0; s < q; ++s) {
            const int v = b[static_cast<std::size_t>(block * q + s)];
            if (v != 0 && v != 1) throw ContractError("one-hot vector entries must be 0 or 1");
            ones += v;
        }
        if (ones != 1) throw ContractError("block " + std::to_string(block) + " is not one-hot");
    }
    const Index w = layout.width();
    std::vector<std::int8_t> z(static_cast<std::size_t>(layout.num_vars()), 0);
    for (Index r = 0; r < w; ++r) {
        for (Index c = 0; c < w; ++c) {
            z[static_cast<std::size_t>(r * w + c)] =
                    static_cast<std::int8_t>(b[static_cast<std::size_t>(r)] * b[static_cast<std::size_t>(c)]);
        }
    }
    return {Domain::binary, std::move(z)};
}

Assignment lift(const PolyphaseSequence& r) {
    const Eigen::VectorXi b = one_hot(r);
    return lift(std::span<const int>(b.data(), static_cast<std::size_t>(b.size())), r.size(), r.num_states());
}

DecodeReport decode(const Assignment& assignment, Index n, int q, bool require_symmetry) {
    const Layout layout(n, q);
    if (assignment.size() != static_cast<std::size_t>(layout.num_vars())) {
        throw ContractError("assignment has " + std::to_string(assignment.size()) + " values, poly-phase layout for N=" +
                            std::to_string(n) + ", Q=" + std::to_string(q) + " needs " +
                            std::to_string(layout.num_vars()));
    }
    const Assignment a = to_binary_domain(assignment);
    auto Z = [&](Index bn, Index bm, int i, int j) { return a[static_cast<std::size_t>(layout.index(bn, bm, i, j))]; };
    auto row_sum = [&](Index bn, Index bm, int i) {
        int s = 0;
        for (int j = 0; j < q; ++j) s += Z(bn, bm, i, j);
        return s;
    };
    auto col_sum = [&](Index bn, Index bm, int j) {
        int s = 0;
        for (int i = 0; i < q; ++i) s += Z(bn, bm, i, j);
        return s;
    };

    DecodeReport report;
    for (Index bn = 0; bn < n; ++bn) {
        for (Index bm = 0; bm < n; ++bm) {
            int total = 0;
            for (int i = 0; i < q; ++i) total += row_sum(bn, bm, i);
            if (total != 1) report.onehot_violations.emplace_back(bn, bm);
        }
    }
    if (require_symmetry) {
        for (Index bn = 0; bn < n; ++bn) {
            for (Index bm = bn + 1; bm < n; ++bm) {
                for (int i = 0; i < q; ++i) {
                    for (int j = 0; j < q; ++j) {
                        if (Z(bn, bm, i, j) != Z(bm, bn, j, i)) report.symmetry_violations.push_back({bn, bm, i, j});
                    }
                }
            }
        }
    }
    for (Index bn = 0; bn < n; ++bn) {
        for (Index bm = 0; bm + 1 < n; ++bm) {
            for (int i = 0; i < q; ++i) {
                if (row_sum(bn, bm, i) != row_sum(bn, bm + 1, i)) report.chain_h_violations.push_back({bn, bm, i, 0});
            }
        }
    }
    for (Index bm = 0; bm < n; ++bm) {
        for (Index bn = 0; bn + 1 < n; ++bn) {
            for (int j = 0; j < q; ++j) {
                if (col_sum(bn, bm, j) != col_sum(bn + 1, bm, j)) report.chain_v_violations.push_back({bn, bm, 0, j});
            }
        }
    }
    report.feasible = report.onehot_violations.empty() && report.symmetry_violations.empty() &&
                      report.chain_h_violations.empty() && report.chain_v_violations.empty();
    if (!report.feasible) return report;

    auto nonzero_col = [&](Index bn, Index bm) {
        for (int i = 0; i < q; ++i) {
            for (int j = 0; j < q; ++j) {
                if (Z(bn, bm, i, j)) return std::pair{i, j};
            }
        }
        return std::pair{-1, -1};
    };
    std::vector<int> filter(static_cast<std::size_t>(n)), emitted(static_cast<std::size_t>(n));
    for (Index m = 0; m < n; ++m) filter[static_cast<std::size_t>(m)] = nonzero_col(0, m).second;
    for (Index m = 0; m < n; ++m) emitted[static_cast<std::size_t>(m)] = nonzero_col(m, 0).first;
    report.sequence.emplace(std::move(filter), q);
    report.canonical = report.sequence->canonical();
    report.emitted.emplace(std::move(emitted), q);
    if (*report.emitted == *report.sequence) report.islr = islr_polyphase(*report.sequence);
    return report;
}

std::int64_t variable_count(Index n, int q) {
    check_shape(n, q);
    const std::int64_t w = static_cast<std::int64_t>(n) * q;
    return w * w;
}

}  // namespace islr::polyphase_lift
