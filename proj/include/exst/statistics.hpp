#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "exst/expr.hpp"
#include "exst/model.hpp"
#include "exst/snf.hpp"

namespace exst {

/// Invariant factors and generators of the statistics group T = E_inv/E_id.
struct StatisticsResult {
    std::vector<BigInt> invariant_factors;  // entries > 1
    int free_factor_count = 0;              // must be 0 for finite A
    std::vector<Expression> generators;     // one per nontrivial factor
    std::vector<BigInt> t_f_factors;  // torsion of E/lattice; equals
                                      // invariant_factors when nothing is imposed
    long long dim_e = 0;
    int identity_generator_count = 0;
    int dim_einv = 0;
};

struct TfResult {
    std::vector<BigInt> factors;  // entries > 1
    std::vector<Expression> generators;
};

/// Computation pipeline for one model: locality-identity lattice, E_inv,
/// orders, elimination. All heavy pieces (identity matrix, SNF variants,
/// E_inv kernel) are built lazily and cached. An optional list of imposed
/// process words extends the lattice by span{θ(g_i, a) : a ∈ A} (the F of
/// the restriction-imposition procedure); orders computed by an engine with
/// impositions are "modified orders".
class StatisticsEngine {
  public:
    explicit StatisticsEngine(const ExcitationModel& m,
                              std::vector<ProcessWord> imposed = {},
                              const ResourceLimits& limits = default_limits());

    const ExcitationModel& model() const { return m_; }

    /// Deduplicated basic locality identities (plus imposed columns, if any),
    /// one column per generator in the dense θ-index.
    const SparseIntMatrix& identity_matrix();
    const std::vector<SparseVec>& identity_columns();
    /// Number of lattice generators before imposition columns.
    int base_identity_count();

    /// Torsion of E/E_id: invariant factors > 1; generators (columns of
    /// U^-1 at the nontrivial pivots) only when requested — they force the
    /// expensive transform accumulation.
    TfResult compute_Tf(bool want_generators = false);

    int dim_einv();
    /// Column j of the E_inv kernel basis as an expression.
    Expression einv_basis_vector(int j);
    bool in_einv(const Expression& e);

    StatisticsResult compute_T(bool want_generators = true);

    /// 0 if e ∉ E_inv; otherwise the minimal n ≥ 1 with n·e in the lattice
    /// (1 means e is an identity). Throws DomainError if an E_inv element
    /// has a nonzero free coordinate (impossible for finite A; a bug).
    BigInt order_of_expression(const Expression& e);

    /// Representative e' ≡ e (mod lattice) with no θ(t,·) terms.
    Expression eliminate_operator(const Expression& e, int t);

  private:
    void build_identities();
    void build_constraints();
    const SnfResult& snf_plain();
    const SnfResult& snf_with_u();
    const KernelWithCoords& einv_kernel();

    const ExcitationModel& m_;
    std::vector<ProcessWord> imposed_;
    ResourceLimits limits_;

    bool ids_built_ = false;
    std::vector<SparseVec> columns_;
    int base_count_ = 0;
    std::optional<SparseIntMatrix> matrix_;

    std::vector<MappedModel> maximal_quotients_;
    bool quotients_built_ = false;

    std::optional<SnfResult> snf_plain_, snf_u_;
    std::optional<KernelWithCoords> einv_;
};

/// Unreduced oracle: all θ([s_k,[…,[s_2,s_1]]], a) over every ordering of
/// every empty-common-support set of distinct operators with at most
/// max_operators elements, no deduplication. Desk-scale models only.
SparseIntMatrix naive_identity_generators(const ExcitationModel& m, int max_operators,
                                          const ResourceLimits& limits = default_limits());

/// True iff the integer column spans coincide (mutual lattice membership).
bool lattice_equal(const SparseIntMatrix& a, const SparseIntMatrix& b);

}  // namespace exst
