#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "workbench/graphs.hpp"
#include "workbench/natural.hpp"

namespace workbench::aowf {

// Two-ary partial function over naturals; empty means undefined. The
// evaluator must be deterministic.
using PartialFn = std::function<std::optional<Natural>(const Natural&, const Natural&)>;
using TotalFn = std::function<Natural(const Natural&, const Natural&)>;

// Natural extended with a distinguished absorbing bottom element,
// represented as an empty optional.
using BotValue = std::optional<Natural>;
using BotFn = std::function<BotValue(const BotValue&, const BotValue&)>;

// Wraps a total function as a partial one with full domain.
PartialFn as_partial(TotalFn f);

// Cantor pairing; bijective, monotone in each argument, pair(0,0) = 0.
Natural pair(const Natural& x, const Natural& y);
std::pair<Natural, Natural> unpair(const Natural& z);

// Bottom extension: bottom absorbs, and undefined pairs map to bottom.
BotFn bot_extend(PartialFn f);

// Total extension with 0 standing in for bottom: f'(a,b) = f(a,b) where
// defined, else 0, and f'(0,.) = f'(.,0) = 0. Requires 0 to appear in
// neither the domain nor the image of f (shift encodings by +1 first if
// it does).
TotalFn totalize(PartialFn f);

// --- certificate machinery over graph 3-colorability ---

// Graph as a natural: the text-format bytes read base-256, plus 1.
Natural encode_graph(const graphs::Graph& g);
// Partial inverse; empty unless x is exactly an encoded graph.
std::optional<graphs::Graph> decode_graph(const Natural& x);

// A legal coloring as a base-4 numeral: a pad of 1-digits followed by one
// color digit (1..3) per vertex, sized so certificates are strictly longer
// than x and all certificates of x share one length.
Natural encode_certificate(const Natural& x, const graphs::Coloring3& psi);
bool is_certificate(const Natural& x, const Natural& z);
std::optional<graphs::Coloring3> decode_certificate(const Natural& x, const Natural& z);

// The certificate-halving function: on two certificate claims for the same
// instance it keeps the smaller certificate; a claim paired against the
// bare instance token <x,x> collapses to <x,x>; anything else is undefined.
std::optional<Natural> sigma_cert(const Natural& a, const Natural& b);

// Finite domain for exhaustive property checks: every <x, certificate>
// element of g plus <x,x>, padded with deterministic non-members (foreign
// instances, non-certificates, small naturals) up to min_size.
std::vector<Natural> certificate_domain(const graphs::Graph& g, std::size_t min_size = 30);

// --- the total, strongly-noninvertible-yet-invertible construction ---

// odd(n) = 2n+1, even(n) = 2n. Four cases on the parities of a and b:
// mixed parity feeds the odd argument through rho into an even value,
// equal parity yields odd(a+b), and a zero argument yields a+b.
Natural sigma_strong(const Natural& a, const Natural& b, const TotalFn& rho);

// Stand-in inner function for sigma_strong; total and honest, nothing
// about the tests depends on it being hard to invert.
TotalFn default_rho();

// g(z) = (0, z) inverts sigma_strong everywhere: sigma(0, z) = z.
std::pair<Natural, Natural> universal_inverter_for_sigma_strong(const Natural& z);

// --- exhaustive property checks ---

struct CheckResult {
  bool holds = true;
  std::vector<Natural> witness;  // violating triple (or pair), empty when holds
};

// Tests the bottom-extended equation sigma(sigma(a,b),c) = sigma(a,sigma(b,c))
// on all |domain|^3 triples; definedness must match on both sides.
CheckResult check_associative(const PartialFn& f, const std::vector<Natural>& domain);

// Tests the equation only on triples where (a,b), (b,c), (a, f(b,c)), and
// (f(a,b), c) are all defined.
CheckResult check_weakly_associative(const PartialFn& f, const std::vector<Natural>& domain);

// Tests sigma(a,b) = sigma(b,a) under the bottom extension on all pairs.
CheckResult check_commutative(const PartialFn& f, const std::vector<Natural>& domain);

// Bounded inversion oracles: given the first argument and the value, the
// smallest second argument b <= bound with f(a,b) = z (and the symmetric
// variant fixing the second argument).
std::optional<Natural> invert_first_bruteforce(const PartialFn& f, const Natural& a,
                                               const Natural& z, const Natural& bound);
std::optional<Natural> invert_second_bruteforce(const PartialFn& f, const Natural& b,
                                                const Natural& z, const Natural& bound);

struct OverstrongnessVerdict {
  // True when the candidate search answered every realized query, i.e. an
  // inverter was exhibited and overstrongness is refuted on this slice.
  bool inverter_exhibited = false;
  // Values the bounded search could not invert; nonempty means the run was
  // inconclusive, never a confirmation.
  std::vector<Natural> uninverted_values;
};

// Falsifier for the stronger no-inverter-even-ignoring-the-argument notion:
// that property quantifies over all efficient inverters, so no finite test
// can confirm it. This search plays one concrete inverter (return the
// first candidate pair mapping to z) against every value the slice
// realizes. Exhibiting it refutes the property on the slice; failing to is
// merely inconclusive.
OverstrongnessVerdict overstrongness_falsifier(const PartialFn& f,
                                               const std::vector<Natural>& slice,
                                               const std::vector<Natural>& candidates);

}  // namespace workbench::aowf
