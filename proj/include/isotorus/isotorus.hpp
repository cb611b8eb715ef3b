#ifndef ISOTORUS_ISOTORUS_HPP
#define ISOTORUS_ISOTORUS_HPP

#include <isotorus/calogero_moser.hpp>
#include <isotorus/elliptic.hpp>
#include <isotorus/errors.hpp>
#include <isotorus/flow.hpp>
#include <isotorus/integrator.hpp>
#include <isotorus/io.hpp>
#include <isotorus/monodromy.hpp>
#include <isotorus/painleve.hpp>
#include <isotorus/random.hpp>
#include <isotorus/verify.hpp>

#endif // ISOTORUS_ISOTORUS_HPP
