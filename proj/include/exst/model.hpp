#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "exst/abelian.hpp"
#include "exst/complex.hpp"
#include "exst/errors.hpp"

namespace exst {

/// A moving operator: creates the excitation ∂s and acts inside a finite
/// support point set.
struct Operator {
    int id = 0;
    std::string label;
    GroupElement boundary;     // element of the ambient chain group
    std::vector<int> support;  // sorted point ids, nonempty
};

struct MappedModel;

/// Excitation model (A, S, ∂, J). Configurations are enumerated concretely
/// as chain-group elements; quotient and relative models keep the same
/// element list and coarsen it with a coset partition, so a configuration
/// index is a partition class (class 0 contains 0).
class ExcitationModel {
  public:
    struct ExplicitOp {
        std::string label;
        GroupElement boundary;
        std::vector<int> support;
    };

    static ExcitationModel from_simplicial(
        const SimplicialComplex& c, int p, const FiniteAbelianGroup& g,
        const std::optional<std::vector<GroupElement>>& generating_set = std::nullopt,
        const ResourceLimits& limits = default_limits());

    static ExcitationModel from_explicit(const FiniteAbelianGroup& ambient,
                                         const std::vector<ExplicitOp>& ops, int point_count,
                                         const ResourceLimits& limits = default_limits());

    static ExcitationModel relative_model(
        const SimplicialComplex& c, const SimplicialComplex& c_sub, int p,
        const FiniteAbelianGroup& g,
        const std::optional<std::vector<GroupElement>>& generating_set = std::nullopt,
        const ResourceLimits& limits = default_limits());

    const FiniteAbelianGroup& ambient() const { return ambient_; }
    int point_count() const { return point_count_; }

    const std::vector<Operator>& operators() const { return ops_; }
    int op_count() const { return static_cast<int>(ops_.size()); }
    const Operator& op(int id) const { return ops_.at(id); }

    /// Accepts the canonical label or a registered alias; throws ParseError
    /// for unknown names.
    int op_by_label(const std::string& name) const;
    bool has_label(const std::string& name) const { return label_index_.count(name) != 0; }

    // -- configurations --
    int config_count() const { return config_count_; }
    int zero_config() const { return 0; }

    /// Class of (representative of cfg) + delta; delta must keep the result
    /// inside the enumerated set (always true for sums of operator
    /// boundaries).
    int config_add(int cfg, const GroupElement& delta) const;

    /// config_add with delta = sign * ∂(op).
    int config_apply(int cfg, int op_id, int sign) const;

    int config_of_element(const GroupElement& e) const {
        return class_of_[elements_.index_of(e)];
    }
    const GroupElement& config_rep(int cfg) const {
        return elements_.elements[class_rep_.at(cfg)];
    }

    const IndexedElements& elements() const { return elements_; }
    const std::vector<int>& element_class() const { return class_of_; }
    const std::vector<GroupElement>& quotient_generators() const { return quotient_gens_; }

    /// V_x per point x (operator ids whose support contains x).
    const std::vector<std::vector<int>>& max_support_sets() const { return v_sets_; }

    /// dim E = |S| * |A|
    long long dim_e() const { return static_cast<long long>(op_count()) * config_count_; }

  private:
    void finalize(const ResourceLimits& limits);
    void register_label(const std::string& name, int id);

    FiniteAbelianGroup ambient_;
    IndexedElements elements_;
    std::vector<GroupElement> quotient_gens_;
    std::vector<int> class_of_;   // element index -> config index
    std::vector<int> class_rep_;  // config index -> first element index
    int config_count_ = 0;
    std::vector<Operator> ops_;
    int point_count_ = 0;
    std::vector<std::vector<int>> v_sets_;
    std::unordered_map<std::string, int> label_index_;

    friend MappedModel quotient_model(const ExcitationModel&, const std::vector<int>&);
    friend ExcitationModel sub_model(const ExcitationModel&, const std::vector<int>&,
                                     const ResourceLimits&);
};

/// quotient_model: keep the operators in `keep_ops`, merge configurations
/// along the boundaries of the dropped ones. op_map and config_map translate
/// old indices to new (-1 for dropped operators).
struct MappedModel {
    ExcitationModel model;
    std::vector<int> op_map;
    std::vector<int> config_map;
};

MappedModel quotient_model(const ExcitationModel& m, const std::vector<int>& keep_ops);

/// sub_model: keep the operators, regenerate A as the closure of their
/// boundaries.
ExcitationModel sub_model(const ExcitationModel& m, const std::vector<int>& keep_ops,
                          const ResourceLimits& limits = default_limits());

/// All inclusion-minimal operator sets with empty common support (size >= 2).
/// Computed over distinct support sets, then expanded over the operators
/// carrying each support.
std::vector<std::vector<int>> minimal_empty_sets(const ExcitationModel& m,
                                                 const ResourceLimits& limits = default_limits());

/// Builtin model by complex name. Most names go through from_simplicial at
/// the canonical (or given) excitation dimension; double-arc-chain and
/// double-y-graph build explicit models whose operators are whole curves
/// with the planar crossing points included in their supports.
ExcitationModel builtin_model(const std::string& name, const FiniteAbelianGroup& g,
                              std::optional<int> p = std::nullopt,
                              const std::optional<std::vector<GroupElement>>& generating_set =
                                  std::nullopt,
                              const ResourceLimits& limits = default_limits());

}  // namespace exst
