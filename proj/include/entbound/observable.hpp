#ifndef ENTBOUND_OBSERVABLE_HPP
#define ENTBOUND_OBSERVABLE_HPP

#include <string>

#include "entbound/linalg.hpp"

namespace entbound {

/// Hermitian operator on a (possibly multi-copy) tensor-product space.
/// `layout` documents the declared factor ordering, e.g. "A,B,A',B'".
struct Observable {
  linalg::ComplexMatrix mat;
  linalg::DimProfile dims;
  std::string layout;
};

}  // namespace entbound

#endif
