#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fc/dgvec.hpp"

namespace fc {

using Word = std::vector<std::uint8_t>;

// Free-module tensor word with the coefficient pulled to the left. One type
// serves both sides of the correspondence: graded-side words run over the
// canonical tangent frame (and its dual), quotient-side words over the
// B-frame (and its dual). Slot layout is positional; the usual layout is all
// dual slots first, then vector slots.
struct Tensor {
    bool pair_side = false;
    std::vector<bool> dual;  // per slot
    std::map<Word, FormElement> terms;

    int slots() const { return static_cast<int>(dual.size()); }
    bool is_zero() const { return terms.empty(); }
    bool operator==(const Tensor& o) const {
        return pair_side == o.pair_side && dual == o.dual && terms == o.terms;
    }
    bool operator!=(const Tensor& o) const { return !(*this == o); }

    void add_term(const Word& w, const FormElement& c);
};

Tensor tensor_zero(bool pair_side, std::vector<bool> dual);
Tensor tensor_add(const Tensor& a, const Tensor& b);
Tensor tensor_sub(const Tensor& a, const Tensor& b);
Tensor tensor_neg(const Tensor& a);
// Left multiplication by a form: no slot crossings.
Tensor tensor_scale(const FormElement& w, const Tensor& t);

// Internal degree of a slot symbol.
int symbol_degree(const CanonicalFrame& fr, bool pair_side, bool dual, int sym);
int symbol_count(const CanonicalFrame& fr, bool pair_side);

// a (x) b: words concatenate; b's coefficient crosses a's word.
Tensor tensor_product(const CanonicalFrame& fr, const Tensor& a, const Tensor& b);

// Permute slots: slot i of the result is slot perm[i] of the input, with
// Koszul transposition signs from internal symbol degrees.
Tensor tensor_reorder(const CanonicalFrame& fr, const Tensor& t, const std::vector<int>& perm);

// One factor of a slot-wise map.
struct SlotOp {
    int degree = 0;
    bool identity = true;
    // entries[from] -> list of (to, coefficient)
    std::map<int, std::vector<std::pair<int, FormElement>>> entries;

    static SlotOp id() { return SlotOp{}; }
};

// Apply per-slot maps simultaneously, standard graded tensor-map convention:
// the factor at slot k crosses the coefficient and all earlier input slots.
Tensor apply_slotwise(const CanonicalFrame& fr, const Tensor& in, bool out_pair_side,
                      const std::vector<bool>& out_dual, const std::vector<SlotOp>& ops);

// Lie derivative along the homological field (graded side).
Tensor tensor_lq(const CanonicalFrame& fr, const Tensor& t);

// Chevalley-Eilenberg differential of the Bott module structure (quotient side).
Tensor tensor_db(const CanonicalFrame& fr, const Tensor& t);

std::string tensor_to_string(const CanonicalFrame& fr, const Tensor& t);
// Inverse of tensor_to_string; slot kinds are read off the symbol names.
Tensor tensor_from_string(const CanonicalFrame& fr, bool pair_side, const std::string& text);

}  // namespace fc
