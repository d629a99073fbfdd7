#ifndef WCAUSAL_PRINTER_HPP
#define WCAUSAL_PRINTER_HPP

#include <string>

#include "wcausal/model.hpp"

namespace wcausal {

// Canonical surface rendering; parse_theory(print_theory(t)) is structurally
// equal to t for every valid theory.
std::string print_theory(const CausalTheory& theory);
std::string print_scenario(const Scenario& scenario);

// Field-wise equality ignoring source spans.
bool structurally_equal(const CausalTheory& a, const CausalTheory& b);
bool structurally_equal(const Scenario& a, const Scenario& b);

}  // namespace wcausal

#endif
