#include "prunecel/bench/enrich.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <iostream>
#include <optional>
#include <set>
#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "prunecel/ntriples.hpp"

namespace prunecel::bench {

namespace {

using nlohmann::json;

std::string url_encode(std::string_view s) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    out.reserve(s.size() * 3);
    for (unsigned char c : s) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
            out += static_cast<char>(c);
        } else {
            out += '%';
            out += hex[c >> 4];
            out += hex[c & 0xf];
        }
    }
    return out;
}

struct Endpoint {
    std::string base;  // scheme://host[:port]
    std::string path;  // /sparql
};

Endpoint split_endpoint(const std::string& url) {
    Endpoint ep;
    std::size_t scheme = url.find("://");
    std::size_t path_start =
        scheme == std::string::npos ? url.find('/') : url.find('/', scheme + 3);
    if (path_start == std::string::npos) {
        ep.base = url;
        ep.path = "/";
    } else {
        ep.base = url.substr(0, path_start);
        ep.path = url.substr(path_start);
    }
    return ep;
}

// one entity's sorted, capped triple lines; nullopt = fetch failed
std::optional<std::vector<std::string>> fetch_entity(httplib::Client& client,
                                                     const std::string& path, const Iri& entity,
                                                     const EnrichOptions& options) {
    const std::string query = "SELECT ?p ?o WHERE { " + nt_iri(entity) + " ?p ?o } LIMIT " +
                              std::to_string(options.max_cbd_triples);
    const std::string target = path + (path.find('?') == std::string::npos ? "?" : "&") +
                               "query=" + url_encode(query) + "&format=json";

    httplib::Headers headers{{"Accept", "application/sparql-results+json"}};
    if (!options.authorization.empty())
        headers.emplace("Authorization", options.authorization);

    for (unsigned attempt = 0; attempt <= options.retries; ++attempt) {
        if (attempt > 0)
            std::this_thread::sleep_for(std::chrono::milliseconds(100 * (1u << (attempt - 1))));
        auto res = client.Get(target, headers);
        if (!res || res->status < 200 || res->status >= 300) continue;
        json doc = json::parse(res->body, nullptr, /*allow_exceptions=*/false);
        if (doc.is_discarded() || !doc.contains("results")) continue;

        std::set<std::string> lines;
        if (doc["results"].contains("bindings")) {
            for (const auto& b : doc["results"]["bindings"]) {
                if (!b.contains("p") || !b.contains("o")) continue;
                const auto& p = b["p"];
                const auto& o = b["o"];
                if (p["type"] != "uri") continue;
                const std::string predicate = nt_iri(p["value"].get<std::string>());
                const std::string otype = o["type"].get<std::string>();
                std::string object;
                if (otype == "uri") {
                    object = nt_iri(o["value"].get<std::string>());
                } else if (otype == "literal" || otype == "typed-literal") {
                    object = nt_literal(o["value"].get<std::string>());
                } else {
                    continue;  // bnode
                }
                lines.insert(nt_iri(entity) + " " + predicate + " " + object + " .");
            }
        }
        std::vector<std::string> sorted(lines.begin(), lines.end());
        if (sorted.size() > options.max_cbd_triples) sorted.resize(options.max_cbd_triples);
        return sorted;
    }
    return std::nullopt;
}

}  // namespace

EnrichResult enrich_entities(const std::vector<Iri>& entities, const EnrichOptions& options) {
    EnrichResult result;
    if (entities.empty() || options.endpoint.empty()) return result;

    const Endpoint ep = split_endpoint(options.endpoint);
    const unsigned workers = std::max(1u, options.concurrency);

    std::vector<std::optional<std::vector<std::string>>> per_entity(entities.size());
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> transport_failures{0};
    // a dead endpoint should not cost one timeout per entity
    constexpr std::size_t kFailureCutoff = 3;

    auto work = [&]() {
        httplib::Client client(ep.base);
        client.set_connection_timeout(2, 0);
        client.set_read_timeout(10, 0);
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= entities.size()) return;
            if (transport_failures.load() >= kFailureCutoff) continue;
            per_entity[i] = fetch_entity(client, ep.path, entities[i], options);
            if (!per_entity[i]) transport_failures.fetch_add(1);
        }
    };

    if (workers == 1 || entities.size() == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    std::set<std::string> lines;
    for (std::size_t i = 0; i < entities.size(); ++i) {
        if (!per_entity[i]) {
            ++result.warnings;
            std::cerr << "enrich: skipped " << entities[i] << "\n";
            continue;
        }
        lines.insert(per_entity[i]->begin(), per_entity[i]->end());
    }
    for (const auto& line : lines) {
        result.ntriples += line;
        result.ntriples += '\n';
    }
    return result;
}

}  // namespace prunecel::bench
