#ifndef GHOM_JSON_IO_HH_
#define GHOM_JSON_IO_HH_

#include "ghom/cert.hh"
#include "ghom/decomp.hh"
#include "ghom/quantum.hh"

#include "json.hpp"

namespace ghom {

using Json = nlohmann::json;

// Schemas use explicit id lists; arbitrary (integer or string) ids are
// accepted on input and densified in sorted order. Malformed documents
// throw DomainError("InvalidJson").

Json incidence_to_json(const IncidenceGraph& g);
IncidenceGraph incidence_from_json(const Json& j);

Json hypergraph_to_json(const Hypergraph& h);
Hypergraph hypergraph_from_json(const Json& j);

Json decomp_to_json(const TreeDecomp& d);
TreeDecomp decomp_from_json(const Json& j);

Json labeled_to_json(const LabeledGraph& l);
LabeledGraph labeled_from_json(const Json& j);

Json cert_to_json(const GliCertPtr& c);
GliCertPtr cert_from_json(const Json& j);

Json quantum_to_json(const QuantumGraph& q);
QuantumGraph quantum_from_json(const Json& j);

std::string rat_to_string(const Rat& r);  // "p" or "p/q"
Rat rat_from_string(const std::string& s);

}  // namespace ghom

#endif  // GHOM_JSON_IO_HH_
