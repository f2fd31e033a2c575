#pragma once

// Finite-dimensional left modules given by the action matrix of every basis
// element of the algebra.  Quiver modules are built from vertex dimensions
// and arrow matrices; the relations are checked on construction.

#include <optional>
#include <vector>

#include "drt/algebra.hpp"

namespace drt {

class Module {
public:
    Module() = default;
    // actions[i] = matrix of basis element i (dim x dim); validated.
    Module(AlgebraPtr a, std::size_t dim, std::vector<Matrix> actions);

    // Vertex spaces stacked in vertex order; arrow_actions[a] maps the source
    // vertex space to the target vertex space.
    static Module from_quiver(AlgebraPtr a, std::vector<std::size_t> vertex_dims, std::vector<Matrix> arrow_actions);
    // k[t]/(f)-modules from the matrix of t.
    static Module from_t_action(AlgebraPtr a, const Matrix& t);

    const Algebra& algebra() const { return *a_; }
    const AlgebraPtr& algebra_ptr() const { return a_; }
    std::size_t dim() const noexcept { return dim_; }
    const Matrix& action(std::size_t basis_index) const { return act_.at(basis_index); }
    Matrix action_of(const Vec& element) const;
    Vec act(const Vec& element, const Vec& v) const { return action_of(element).apply(v); }
    // Dimension of f_u M for each projective representative.
    std::vector<std::size_t> dimension_vector() const;

private:
    AlgebraPtr a_;
    std::size_t dim_ = 0;
    std::vector<Matrix> act_;
};

Module projective_module(AlgebraPtr a, std::size_t u);
Module simple_module(AlgebraPtr a, std::size_t u);  // top of the projective
Module direct_sum(const Module& m, const Module& n);
// Submodule spanned by the given vectors (must be A-stable) and quotient by it.
Module submodule(const Module& m, const std::vector<Vec>& basis);
Module quotient_module(const Module& m, const std::vector<Vec>& sub_basis);

// Basis of Hom_A(M, N) as (N.dim x M.dim) matrices.
std::vector<Matrix> hom_modules(const Module& m, const Module& n);

struct RadicalData {
    std::vector<Vec> basis;  // rad M = (rad A) M
    Module radical;
    Module top;
};
RadicalData radical_of_module(const Module& m);

// End(M) as structure constants, product = composition (a * b = a o b).
struct EndAlgebra {
    std::vector<Matrix> basis;
    AssocAlgebra algebra;
    Matrix to_matrix(const Vec& coords) const;
};
EndAlgebra endomorphism_algebra(const Module& m);

struct ModuleSummand {
    Module module;
    Matrix inclusion;   // M.dim x k
    Matrix projection;  // k x M.dim
};
std::vector<ModuleSummand> decompose_module(const Module& m);
bool is_indecomposable(const Module& m);
bool modules_isomorphic(const Module& m, const Module& n);

}  // namespace drt
