#pragma once

#include "redvar/linalg.hpp"

#include <string>
#include <vector>

namespace redvar {

// U * M * V = D with U, V unimodular and D diagonal, d1 | d2 | ... >= 0.
struct SNF {
  IntMat u, d, v;
  int rank = 0;
  std::vector<Int> diagonal() const {
    std::vector<Int> r;
    int n = std::min(d.rows, d.cols);
    for (int i = 0; i < n; ++i) r.push_back(d.at(i, i));
    return r;
  }
};

SNF smith_normal_form(const IntMat& m);

// Basis of the integer kernel {x in Z^cols : M x = 0}.  The basis is
// saturated (the kernel of an integer matrix always is).
std::vector<IntVec> integer_kernel(const IntMat& m);

// Does the column lattice of M contain x?  If so and sol != nullptr, an
// integer preimage is stored there.
bool lattice_contains(const IntMat& m, const IntVec& x, IntVec* sol = nullptr);

// Basis of Z^n intersected with the rational span of the given vectors
// (each of length n).  This is the saturation of the lattice they generate.
std::vector<IntVec> lattice_of_subspace(const std::vector<QVec>& span_vectors, int n);

// Generators of (lattice generated by `gens`) intersected with the rational
// span of `span_vectors`.
std::vector<IntVec> lattice_intersect_subspace(const std::vector<IntVec>& gens,
                                               const std::vector<QVec>& span_vectors);

// A finitely generated abelian group Z^ngens / (column lattice of relations),
// normalized to invariant factors d1 | d2 | ... (each >= 2) plus free rank.
// The presentation is kept so maps between groups stay meaningful.
struct FGAbelianGroup {
  int ngens = 0;
  IntMat relations;  // ngens x k, columns are relations
  long free_rank = 0;
  std::vector<Int> invariant_factors;

  bool is_finite() const { return free_rank == 0; }
  bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }
  Int torsion_order() const {
    Int t = 1;
    for (const auto& d : invariant_factors) t *= d;
    return t;
  }
  std::string to_string() const;
};

FGAbelianGroup group_from_presentation(int ngens, const IntMat& relations);
FGAbelianGroup free_group(int rank);

// A homomorphism source -> target given on generators.  matrix is
// target.ngens x source.ngens.
struct GroupHom {
  FGAbelianGroup source, target;
  IntMat matrix;
};

// Throws if the matrix does not send source relations into target relations.
void check_hom(const GroupHom& f);

struct SubgroupResult {
  FGAbelianGroup group;
  IntMat embedding;  // source-gens x group-gens: images of kernel generators
};

struct QuotientResult {
  FGAbelianGroup group;     // presented on the target's generators
};

SubgroupResult kernel(const GroupHom& f);
QuotientResult cokernel(const GroupHom& f);

// Cochain complex of f.g. abelian groups: diffs[i] maps terms[i] ->
// terms[i+1]; consecutive differentials must compose to zero modulo
// relations.
struct IntComplex {
  std::vector<FGAbelianGroup> terms;
  std::vector<IntMat> diffs;
  std::vector<std::string> labels;  // optional grading labels
};

void check_complex(const IntComplex& k);

// ker(diffs[pos]) / im(diffs[pos-1]) as an abstract group.
FGAbelianGroup homology(const IntComplex& k, int pos);

// Projection Z^ngens -> Z^free_rank inducing the free quotient of the
// presented group (kills torsion and relations).
IntMat free_quotient_projection(const FGAbelianGroup& g);

}  // namespace redvar
