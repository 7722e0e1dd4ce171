#pragma once

#include <mpfr.h>

#include "bcl/errors.hpp"

namespace bcl {

// Working precision for interval arithmetic. Passed explicitly; values are
// immutable and thread-safe to share.
struct PrecisionContext {
  mpfr_prec_t bits = 128;
  mpfr_prec_t cap = 4096;

  PrecisionContext doubled() const {
    PrecisionContext c = *this;
    c.bits = bits * 2;
    return c;
  }
  bool can_double() const { return bits * 2 <= cap; }
};

// Runs f(ctx), doubling the working precision on UndecidableAtPrecision until
// the cap is reached.
template <class F>
auto with_precision_retry(PrecisionContext ctx, F&& f) {
  for (;;) {
    try {
      return f(ctx);
    } catch (const UndecidableAtPrecision&) {
      if (!ctx.can_double()) throw;
      ctx = ctx.doubled();
    }
  }
}

}  // namespace bcl
