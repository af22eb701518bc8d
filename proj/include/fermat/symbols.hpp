#pragma once
#include "fermat/cyclotomic.hpp"
#include <map>
#include <string>
#include <vector>

namespace fermat {

// Ideals of Z[omega] as prime -> exponent (class number one: generators are products of primary primes).
using Ideal = std::map<PrimeIdeal, int>;

Ideal ideal_of(const CycInt& x);                 // factorization of (x), x != 0
Ideal rational_ideal(i64 n);                     // (n) in Z[omega], n != 0
Ideal ideal_mul(const Ideal& a, const Ideal& b);
Ideal ideal_pow(const Ideal& a, int k);
CycInt ideal_generator(const Ideal& a);          // product of the primary prime generators
i64 ideal_norm(const Ideal& a);
bool coprime(const Ideal& a, const Ideal& b);
std::string ideal_str(const Ideal& a);

// Cubic residue symbol (a / w)_3 as an exponent e with a^((Nw-1)/3) = omega^e mod w.
int classical_symbol(const PrimeIdeal& w, const CycInt& a);
// same for a rational integer, -1 when w divides t
int rational_symbol(i64 t, const PrimeIdeal& w);
// (x / n)_3 = sum over primes of n, -1 if not coprime
int element_symbol(const CycInt& x, const Ideal& n);

struct E0Entry {
    Ideal ideal;
    CycInt m;          // generator m_e
    bool rational = false;
};

struct SymbolContext {
    int r = 3;
    std::vector<PrimeIdeal> S_prime;
    int r_lambda = 0;                       // exponent of lambda in the modulus c
    CycInt c_elem;                          // generator of c
    std::vector<E0Entry> E0;                // basis of R_c
    std::vector<int> rayclass_factors;      // cyclic factor orders of R_c
    i64 ray_order = 0;                      // |R_c|
    i64 kappa_c = 0;                        // |image of I_F(S) in R_c|
    // internals
    std::vector<int> class_of_residue;      // residue index mod c -> class id, -1 on non-units
    std::vector<std::vector<int>> class_coords;   // class id -> exponents on E0
    std::vector<std::vector<int>> class_table;    // class id multiplication
    std::vector<i64> class_rep;             // a residue index for each class
    std::vector<char> is_cube_mod_c;        // residue index -> is a cube of a unit
};

SymbolContext build_context(const std::vector<PrimeIdeal>& S_prime, unsigned seed = 0);
const SymbolContext& default_context();

// least k with 1 + lambda^k O contained in cubes, checked modulo lambda^(k+6)
int verify_lambda_exponent(int max_k = 8);

int class_of(const SymbolContext& ctx, const CycInt& x);     // x coprime to 3
int class_of(const SymbolContext& ctx, const Ideal& a);
bool class_trivial(const SymbolContext& ctx, i64 n);         // rational (n)

struct Decomposition {
    CycInt generator;     // generator of m used
    int unit = 0;         // index into eis_units: m = u * m_e * m1 * x^3 with m1 = 1 mod c
    int e_class = 0;
    CycInt m_e;
};
Decomposition decompose(const SymbolContext& ctx, const CycInt& generator);

int extended_symbol(const SymbolContext& ctx, const Ideal& m, const Ideal& n);
int extended_symbol_from(const SymbolContext& ctx, const CycInt& generator, const Ideal& n);
int reciprocity_alpha(const SymbolContext& ctx, const Ideal& m, const Ideal& n);

// size of the kernel of I_F(S)/P_F(c) -> R_c seen on rational n <= bound
int cubic_kernel_check(const SymbolContext& ctx, i64 bound);

std::string serialize_context(const SymbolContext& ctx);

} // namespace fermat
