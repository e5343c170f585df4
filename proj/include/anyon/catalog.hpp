#pragma once

#include "anyon/model.hpp"

#include <string>
#include <vector>

namespace anyon {

// Built-in anyon models.
//
// Names:
//   ZN(N,p)         cyclic model, p an integer or half-integer ("1/2", "5/2")
//   Fib(+1), Fib(-1)
//   K(nu)           sixteen-fold way, nu = 0..15
//   DZ2             toric code, alias of K(0)
//   SO3_6           integer-spin restriction of SU(2)_6 (super-modular, not modular)
//   A x B           product of any two names ('x' or '*' at top level)
// The spellings Fib+1 / Fib-1 are accepted for convenience.
AnyonModel catalog_get(const std::string& name);

/// Canonical form of a catalog name (aliases resolved, whitespace removed).
std::string canonical_name(const std::string& name);

/// Every bosonic modular model with D^2 < 8, one name per distinct entry.
std::vector<std::string> modular_catalog_names();

/// modular_catalog_names() plus the non-modular bosonic entries used as
/// fusion data elsewhere (SO3_6, the trivial fermion ZN(2,1)).
std::vector<std::string> catalog_names();

}  // namespace anyon
