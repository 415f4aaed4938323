#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace nugg {

// Dense symmetric-friendly matrix, row major.
struct DenseMatrix {
    int n = 0;
    std::vector<double> a;

    DenseMatrix() = default;
    explicit DenseMatrix(int size) : n(size), a(static_cast<std::size_t>(size) * size, 0.0) {}
    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

// Diagonal modulation m(x) from the closed family {0, 1, -1, x^-p}, plus an
// escape hatch for arbitrary continuous maps.
class Modulation {
public:
    enum class Kind { Zero, One, NegOne, InvPower, Custom };

    static Modulation zero() { return Modulation(Kind::Zero, 0.0); }
    static Modulation one() { return Modulation(Kind::One, 0.0); }
    static Modulation neg_one() { return Modulation(Kind::NegOne, 0.0); }
    static Modulation inv_power(double p);
    static Modulation custom(std::function<double(double)> f);

    static Modulation parse(const std::string& token);  // "0", "1", "-1", "inv:p"
    std::string token() const;

    double operator()(double x) const;
    Kind kind() const { return kind_; }
    double power() const { return p_; }
    bool needs_positive_argument() const { return kind_ == Kind::InvPower; }

private:
    Modulation(Kind k, double p) : kind_(k), p_(p) {}
    Kind kind_;
    double p_;
    std::function<double(double)> f_;
};

struct GsoSpec {
    Modulation m1, m2, m3, m4;
    std::string preset;  // empty for custom specs

    std::string to_json() const;
    static GsoSpec from_json(const std::string& text);
};

// Named modulation presets. Known names: adjacency, combinatorial, signless,
// random_walk, right_normalized, sym_norm_adjacency, sym_norm_laplacian, eq8.
GsoSpec preset(const std::string& name);
std::vector<std::string> preset_names();

// Density-corrected graph shift operator
//   L = N^-1 D1 A_rho D2 - N^-1 diag(D3 A_rho D4 1),
// A_rho = A diag(rho)^-1, Di = diag(mi(N^-1 A_rho 1)). adjacency must be
// symmetric, non-negative, zero diagonal. Inverse-power modulations require
// every node to have a positive corrected degree.
DenseMatrix build_gso(const DenseMatrix& adjacency, std::span<const double> rho,
                      const GsoSpec& spec);

// Matrix-free action (L u) of the same operator for neighbor-list graphs;
// agrees with build_gso entrywise and scales to large N.
std::vector<double> apply_gso(const std::vector<std::vector<int>>& adjacency,
                              std::span<const double> rho, const GsoSpec& spec,
                              std::span<const double> u);

// Affine map from the operator built at rho = 1 to the textbook matrix of the
// named preset (sign / N scaling only).
DenseMatrix canonical_scale(const DenseMatrix& L, const std::string& preset_name, int N);

// All eigenvalues of a symmetric matrix (ascending), by Householder
// tridiagonalization + implicit QL.
std::vector<double> symmetric_eigenvalues(const DenseMatrix& m);

// Largest |eigenvalue|. Full solve for small matrices, power iteration on the
// squared operator (residual 1e-10) beyond.
double spectral_radius(const DenseMatrix& m);

// extreme eigenvalues (min, max) via shifted power iterations
std::pair<double, double> extreme_eigenvalues(const DenseMatrix& m);

// Eigenvalues with multiplicities of the fully degree-normalized operator of
// the complete bipartite graph K_{n,m}:
// {0 x1, -sqrt(m/n) x(n-1), -sqrt(n/m) x(m-1), -(m+n)/sqrt(mn) x1}.
std::vector<std::pair<double, int>> bipartite_spectrum(int n, int m);

struct DiagCommuteReport {
    bool identity1_holds;      // diag(V A 1) == V diag(A 1)
    bool iff_condition_holds;  // A_ij == 0 whenever v_i != v_j
    bool identity2_holds;      // diag(A V 1) == diag(V A 1)
};

DiagCommuteReport diag_commute_check(const DenseMatrix& A, std::span<const double> v,
                                     double tol = 1e-12);

}  // namespace nugg
