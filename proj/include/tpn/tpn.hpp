//
// Project     : tpn
// Module      : tpn
// Description : umbrella header
//

#ifndef TPN_TPN_HPP
#define TPN_TPN_HPP

#include <tpn/decomp.hpp>
#include <tpn/errors.hpp>
#include <tpn/gallery.hpp>
#include <tpn/io.hpp>
#include <tpn/matrix.hpp>
#include <tpn/norms.hpp>
#include <tpn/ortho.hpp>
#include <tpn/preserver.hpp>
#include <tpn/random.hpp>
#include <tpn/tolerances.hpp>

#endif // TPN_TPN_HPP
