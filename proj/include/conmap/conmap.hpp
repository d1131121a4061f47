#ifndef CONMAP_CONMAP_HPP
#define CONMAP_CONMAP_HPP

// Umbrella header: the whole library except the CLI dispatcher.

#include "constructions.hpp"
#include "map_spec_io.hpp"
#include "summatory.hpp"

#endif
