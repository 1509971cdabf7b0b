#include "leoroute/flow.hpp"

#include <stdexcept>
#include <string>

namespace leoroute {

std::string_view scheme_name(Scheme s) {
  switch (s) {
    case Scheme::FybrrLink: return "fybrrlink";
    case Scheme::GlobalDijkstra: return "dijkstra";
    case Scheme::SwayYenK: return "sway";
    case Scheme::SdraDfs: return "sdra";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  for (Scheme s : {Scheme::FybrrLink, Scheme::GlobalDijkstra, Scheme::SwayYenK, Scheme::SdraDfs}) {
    if (scheme_name(s) == name) return s;
  }
  throw std::invalid_argument("unknown routing scheme '" + std::string(name) + "'");
}

}  // namespace leoroute
