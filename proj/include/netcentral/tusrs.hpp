#pragma once

#include "netcentral/document.hpp"
#include "netcentral/network.hpp"
#include "netcentral/tusrs_fixture.hpp"

// The bundled Tehran network (data/tusrs.net.json compiled in at build time).

namespace netcentral {

inline NetworkDocument load_bundled_tusrs() { return parse_network(fixture::tusrs_json); }

inline TransitNetwork bundled_tusrs_network() { return to_network(load_bundled_tusrs()); }

}  // namespace netcentral
