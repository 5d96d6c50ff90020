#ifndef PRUNECEL_BENCH_ENRICH_HPP
#define PRUNECEL_BENCH_ENRICH_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "prunecel/concept_expr.hpp"

namespace prunecel::bench {

struct EnrichOptions {
    std::string endpoint;               // SPARQL protocol over HTTP
    std::size_t max_cbd_triples = 1000;  // per entity, after sorting
    unsigned concurrency = 4;
    unsigned retries = 2;
    std::string authorization;  // optional Authorization header value
};

struct EnrichResult {
    std::string ntriples;   // sorted, deduplicated
    std::size_t warnings = 0;  // entities skipped after failures
};

// Fetches the outgoing triples of each entity (a bounded concise
// description) via SELECT queries against the endpoint. Per-entity
// failures are logged to stderr and counted; an unreachable endpoint
// degrades to an empty result with warnings, never an exception.
EnrichResult enrich_entities(const std::vector<Iri>& entities, const EnrichOptions& options);

}  // namespace prunecel::bench

#endif
