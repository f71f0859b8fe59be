#pragma once

#include <array>
#include <optional>
#include <string>

namespace hyperconv {

/// Whether distinct hyperimaginary units commute or anticommute.
enum class Family { Anticommutative, Commutative };

/// One of the eight supported four-dimensional associative algebras over
/// the reals with basis 1, i, j, k. The family fixes the sign relation
/// between products of distinct units, and i_sq / j_sq are the squares of
/// the first two units, each +1 or -1. Everything else (k = ij, the
/// remaining products, the square of k) follows from associativity.
struct AlgebraSpec {
    Family family = Family::Anticommutative;
    int i_sq = -1;
    int j_sq = -1;

    bool valid() const {
        return (i_sq == -1 || i_sq == 1) && (j_sq == -1 || j_sq == 1);
    }
};

inline bool operator==(const AlgebraSpec& a, const AlgebraSpec& b) {
    return a.family == b.family && a.i_sq == b.i_sq && a.j_sq == b.j_sq;
}

/// A signed basis element: sign * e[unit], units indexed 0=1, 1=i, 2=j, 3=k.
struct SignedUnit {
    int sign = 1;
    int unit = 0;
};

inline bool operator==(const SignedUnit& a, const SignedUnit& b) {
    return a.sign == b.sign && a.unit == b.unit;
}

/// Multiplication table of basis elements: c[mu][nu] = e_mu * e_nu.
/// In all eight supported algebras every basis product is a single signed
/// basis element, so entries are (sign, unit) pairs; general tables whose
/// entries are arbitrary hypercomplex numbers are deliberately not
/// representable.
struct StructureTable {
    std::array<std::array<SignedUnit, 4>, 4> c{};

    SignedUnit at(int mu, int nu) const { return c[mu][nu]; }
    /// Sign of the product e_mu * e_nu.
    int sign(int mu, int nu) const { return c[mu][nu].sign; }
};

/// Hypercomplex number x0 + x1 i + x2 j + x3 k.
struct HNum {
    std::array<double, 4> v{};

    HNum() = default;
    HNum(double a, double b, double c, double d) : v{a, b, c, d} {}

    double& operator[](int idx) { return v[idx]; }
    double operator[](int idx) const { return v[idx]; }
};

inline bool operator==(const HNum& a, const HNum& b) { return a.v == b.v; }

enum class CommClass { Commutative, Anticommutative, Neither };

/// Basis map e_mu -> sign[mu] * e_perm[mu] for mu in {1,2,3}; e_0 is fixed.
struct SignedPermutation {
    std::array<int, 4> perm{0, 1, 2, 3};
    std::array<int, 4> sign{1, 1, 1, 1};
};

/// Builds the multiplication table of the given algebra. Row 0 and column 0
/// are the identity; the nine unit products follow from the family and the
/// unit squares: ij = k, ji = -k (anticommutative) or +k (commutative),
/// ik = i_sq*j, jk = -+j_sq*i, kj = j_sq*i, ki = -+i_sq*j and
/// k^2 = -+(i_sq*j_sq), the upper sign for the anticommutative family.
StructureTable build_table(const AlgebraSpec& spec);

/// Coefficient-wise sum.
HNum hadd(const HNum& x, const HNum& y);

/// Bilinear product: all 16 coefficient pairs are distributed and routed
/// through the table.
HNum hmul(const StructureTable& table, const HNum& x, const HNum& y);

/// True iff (e_mu e_nu) e_rho = e_mu (e_nu e_rho) for all 64 basis triples;
/// by bilinearity this certifies associativity of the whole algebra.
bool check_associativity(const StructureTable& table);

/// Commutative iff e_mu e_nu = e_nu e_mu for all mu, nu >= 1;
/// anticommutative iff e_mu e_nu = -e_nu e_mu for distinct mu, nu in
/// {1,2,3}; otherwise Neither.
CommClass check_commutativity_class(const StructureTable& table);

/// Searches the 48 signed permutations of {i,j,k} for a basis map turning
/// every structure constant of `a` into the matching one of `b`. A returned
/// map is a certified isomorphism; an empty result only certifies that no
/// signed-permutation isomorphism exists.
std::optional<SignedPermutation> find_signed_permutation_isomorphism(
    const StructureTable& a, const StructureTable& b);

/// The eight supported algebras: anticommutative family first, each family
/// ordered (-1,-1), (-1,+1), (+1,-1), (+1,+1).
std::array<AlgebraSpec, 8> all_algebras();

/// Accepted names, case-insensitive: quaternion, coquaternion, cl20, cl11,
/// bicomplex, tessarine, b_plus_minus, klein, plus the generic signature
/// forms "A[g1,g2]" / "B[g1,g2]" with g in {-1,+1} ('+' optional).
std::optional<AlgebraSpec> parse_algebra_name(const std::string& name);

/// Canonical word name ("quaternion", "tessarine", ...).
std::string algebra_name(const AlgebraSpec& spec);

/// Signature form, e.g. "A[-1,+1]".
std::string algebra_signature(const AlgebraSpec& spec);

}  // namespace hyperconv
