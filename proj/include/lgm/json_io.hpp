#pragma once

#include <json.hpp>

#include "lgm/a_ring.hpp"
#include "lgm/b_ring.hpp"
#include "lgm/state_space.hpp"
#include "lgm/strange_duality.hpp"

namespace lgm {

using Json = nlohmann::ordered_json;

// Rationals are always serialized as strings ("p/q", "/q" omitted for
// integers); JSON numbers appear only for genuinely integral counts.
Json to_json(const Rat& r);
Json to_json(const std::vector<Rat>& v);
Json to_json(const GroupElement& g);
Json to_json(const DiagonalGroup& g);
Json to_json(const InvertiblePotential& p);
Json to_json(const AtomicBlock& b, const InvertiblePotential& p);
Json to_json(const Monomial& m);
Json to_json(const BiDegree& d);
Json to_json(const StateBasisElement& e, const InvertiblePotential& p);
Json to_json(const MirrorPair& mp, const InvertiblePotential& a_side,
             const InvertiblePotential& b_side);
Json to_json(const MilnorRing& ring);
Json to_json(const BFrobeniusTable& t);
Json to_json(const CorrelatorRecord& r);
Json to_json(const ARingPresentation& pres);
Json to_json(const StrangeDualityRow& row);

InvertiblePotential potential_from_json(const Json& j);

} // namespace lgm
