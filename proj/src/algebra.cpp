#include "hyperconv/algebra.hpp"

#include <algorithm>
#include <cctype>

#include "hyperconv/errors.hpp"

namespace hyperconv {

StructureTable build_table(const AlgebraSpec& spec) {
    if (!spec.valid()) throw ConfigError("algebra: unit squares must be -1 or +1");

    const int g1 = spec.i_sq;
    const int g2 = spec.j_sq;
    const bool anti = spec.family == Family::Anticommutative;
    const int f = anti ? -1 : +1;  // sign picked up when swapping distinct units

    StructureTable t;
    for (int mu = 0; mu < 4; ++mu) {
        t.c[0][mu] = {+1, mu};
        t.c[mu][0] = {+1, mu};
    }
    t.c[1][1] = {g1, 0};           // i^2
    t.c[2][2] = {g2, 0};           // j^2
    t.c[3][3] = {f * g1 * g2, 0};  // k^2 = (ij)(ij)
    t.c[1][2] = {+1, 3};           // ij = k
    t.c[2][1] = {f, 3};            // ji
    t.c[1][3] = {g1, 2};           // ik = i^2 j
    t.c[3][1] = {f * g1, 2};       // ki
    t.c[2][3] = {f * g2, 1};       // jk
    t.c[3][2] = {g2, 1};           // kj = j^2 i
    return t;
}

HNum hadd(const HNum& x, const HNum& y) {
    return {x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]};
}

HNum hmul(const StructureTable& table, const HNum& x, const HNum& y) {
    HNum out;
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            const SignedUnit su = table.c[mu][nu];
            out[su.unit] += su.sign * x[mu] * y[nu];
        }
    }
    return out;
}

namespace {

// Product of two signed basis elements under the table.
SignedUnit compose(const StructureTable& t, SignedUnit a, SignedUnit b) {
    const SignedUnit p = t.c[a.unit][b.unit];
    return {a.sign * b.sign * p.sign, p.unit};
}

}  // namespace

bool check_associativity(const StructureTable& table) {
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            for (int rho = 0; rho < 4; ++rho) {
                const SignedUnit left =
                    compose(table, table.c[mu][nu], {+1, rho});
                const SignedUnit right =
                    compose(table, {+1, mu}, table.c[nu][rho]);
                if (!(left == right)) return false;
            }
        }
    }
    return true;
}

CommClass check_commutativity_class(const StructureTable& table) {
    bool commutative = true;
    for (int mu = 1; mu < 4 && commutative; ++mu)
        for (int nu = 1; nu < 4; ++nu)
            if (!(table.c[mu][nu] == table.c[nu][mu])) {
                commutative = false;
                break;
            }
    if (commutative) return CommClass::Commutative;

    bool anticommutative = true;
    for (int mu = 1; mu < 4 && anticommutative; ++mu)
        for (int nu = 1; nu < 4; ++nu) {
            if (mu == nu) continue;
            const SignedUnit ab = table.c[mu][nu];
            const SignedUnit ba = table.c[nu][mu];
            if (!(ab.unit == ba.unit && ab.sign == -ba.sign)) {
                anticommutative = false;
                break;
            }
        }
    return anticommutative ? CommClass::Anticommutative : CommClass::Neither;
}

namespace {

// Image of a signed basis element under the basis map.
SignedUnit map_unit(const SignedPermutation& m, SignedUnit su) {
    if (su.unit == 0) return su;
    return {su.sign * m.sign[su.unit], m.perm[su.unit]};
}

bool is_isomorphism(const SignedPermutation& m, const StructureTable& a,
                    const StructureTable& b) {
    for (int mu = 1; mu < 4; ++mu) {
        for (int nu = 1; nu < 4; ++nu) {
            const SignedUnit lhs = map_unit(m, a.c[mu][nu]);
            SignedUnit rhs = b.c[m.perm[mu]][m.perm[nu]];
            rhs.sign *= m.sign[mu] * m.sign[nu];
            if (!(lhs == rhs)) return false;
        }
    }
    return true;
}

}  // namespace

std::optional<SignedPermutation> find_signed_permutation_isomorphism(
    const StructureTable& a, const StructureTable& b) {
    std::array<int, 3> perm{1, 2, 3};
    do {
        for (int bits = 0; bits < 8; ++bits) {
            SignedPermutation m;
            for (int u = 1; u < 4; ++u) {
                m.perm[u] = perm[u - 1];
                m.sign[u] = (bits >> (u - 1)) & 1 ? -1 : +1;
            }
            if (is_isomorphism(m, a, b)) return m;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

std::array<AlgebraSpec, 8> all_algebras() {
    std::array<AlgebraSpec, 8> out;
    int idx = 0;
    for (Family fam : {Family::Anticommutative, Family::Commutative})
        for (int g1 : {-1, +1})
            for (int g2 : {-1, +1}) out[idx++] = {fam, g1, g2};
    return out;
}

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

// Parses "a[-1,+1]" style signatures (already lowercased, '+' optional).
std::optional<AlgebraSpec> parse_signature(const std::string& s) {
    if (s.size() < 7 || (s[0] != 'a' && s[0] != 'b')) return std::nullopt;
    if (s[1] != '[' || s.back() != ']') return std::nullopt;
    const auto comma = s.find(',');
    if (comma == std::string::npos) return std::nullopt;
    auto parse_sign = [](const std::string& tok) -> std::optional<int> {
        if (tok == "-1") return -1;
        if (tok == "1" || tok == "+1") return +1;
        return std::nullopt;
    };
    const auto g1 = parse_sign(s.substr(2, comma - 2));
    const auto g2 = parse_sign(s.substr(comma + 1, s.size() - comma - 2));
    if (!g1 || !g2) return std::nullopt;
    const Family fam =
        s[0] == 'a' ? Family::Anticommutative : Family::Commutative;
    return AlgebraSpec{fam, *g1, *g2};
}

struct NamedAlgebra {
    const char* name;
    AlgebraSpec spec;
};

constexpr NamedAlgebra kNames[] = {
    {"quaternion", {Family::Anticommutative, -1, -1}},
    {"coquaternion", {Family::Anticommutative, -1, +1}},
    {"cl11", {Family::Anticommutative, +1, -1}},
    {"cl20", {Family::Anticommutative, +1, +1}},
    {"bicomplex", {Family::Commutative, -1, -1}},
    {"tessarine", {Family::Commutative, -1, +1}},
    {"b_plus_minus", {Family::Commutative, +1, -1}},
    {"klein", {Family::Commutative, +1, +1}},
};

}  // namespace

std::optional<AlgebraSpec> parse_algebra_name(const std::string& name) {
    const std::string s = lower(name);
    for (const auto& n : kNames)
        if (s == n.name) return n.spec;
    return parse_signature(s);
}

std::string algebra_name(const AlgebraSpec& spec) {
    for (const auto& n : kNames)
        if (n.spec == spec) return n.name;
    return algebra_signature(spec);
}

std::string algebra_signature(const AlgebraSpec& spec) {
    std::string s(1, spec.family == Family::Anticommutative ? 'A' : 'B');
    s += '[';
    s += spec.i_sq < 0 ? "-1" : "+1";
    s += ',';
    s += spec.j_sq < 0 ? "-1" : "+1";
    s += ']';
    return s;
}

}  // namespace hyperconv
