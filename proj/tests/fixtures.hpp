#pragma once

#include <random>
#include <string>
#include <vector>

#include "ccv/rdf/turtle.hpp"
#include "ccv/rdf/vocab.hpp"
#include "ccv/shacl/shapes.hpp"

namespace ccv::testing {

inline std::string data_path(const std::string& relative) {
  return std::string(CCV_DATA_DIR) + "/" + relative;
}

inline rdf::Graph load(const std::string& relative) {
  return rdf::read_turtle_file(data_path(relative));
}

inline rdf::Term ex(const std::string& local) { return rdf::Term::iri(vocab::ex(local)); }
inline rdf::Term core(const std::string& local) { return rdf::Term::iri(vocab::core(local)); }
inline rdf::Term iri(const std::string& value) { return rdf::Term::iri(value); }
inline rdf::Term date(const std::string& lexical) { return rdf::Term::date_time(lexical); }

inline rdf::Triple triple(const rdf::Term& s, const std::string& p, const rdf::Term& o) {
  return rdf::Triple{s, rdf::Term::iri(p), o};
}

inline std::vector<shacl::NodeShape> ccv_shapes() {
  return shacl::parse_shapes(load("profile/ccv-shapes.ttl"));
}

/// Profile shapes whose local ids are listed, in profile order.
inline std::vector<shacl::NodeShape> ccv_shapes(const std::vector<std::string>& ids) {
  std::vector<shacl::NodeShape> out;
  for (const auto& shape : ccv_shapes())
    for (const auto& id : ids)
      if (shape.id == ex(id)) out.push_back(shape);
  return out;
}

struct World {
  rdf::Graph g;
  std::vector<rdf::Term> contracts, obligations;
};

struct WorldSize {
  int max_contracts = 3;
  int max_obligations = 3;
  int max_values = 2;  // per node and property
};

/// Random contract data over the CCV vocabulary. Contracts link only to
/// obligations and every contract or obligation is typed; an untyped stray
/// node carries statuses and dates too.
inline World random_world(std::mt19937& rng, WorldSize size = {}) {
  using rdf::Term;
  World w;
  std::uniform_int_distribution<int> n_contracts(1, size.max_contracts), n_obligations(0, size.max_obligations),
      coin(0, 1), die(0, 5), extra(2, std::max(2, size.max_values));
  const std::vector<Term> statuses{core("statusPending"), core("statusFulfilled"), core("statusViolated"),
                                   core("statusUnknown")};
  const std::vector<Term> states{core("PendingState"), core("FulfilledState"), core("ViolatedState")};
  const std::vector<Term> dates{date("2020-01-01"), date("2021-06-30"), date("2021-06-30T12:00:00+12:00"),
                                date("2022-09-07")};
  auto pick = [&](const std::vector<Term>& xs) {
    return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
  };
  auto some = [&](const Term& s, const std::string& p, const std::vector<Term>& pool) {
    int k = die(rng) < 2 ? 0 : die(rng) < 4 ? 1 : extra(rng);
    for (int i = 0; i < k; ++i) w.g.insert(s, Term::iri(p), pick(pool));
  };
  const Term type = Term::iri(vocab::rdf_type);
  for (int i = 0, n = n_contracts(rng); i < n; ++i) w.contracts.push_back(ex("c" + std::to_string(i)));
  for (int i = 0, n = n_obligations(rng); i < n; ++i) w.obligations.push_back(ex("o" + std::to_string(i)));
  for (const auto& c : w.contracts) {
    w.g.insert(c, type, Term::iri(vocab::contract_class));
    some(c, vocab::has_contract_status, statuses);
    some(c, vocab::has_end_date, dates);
    for (const auto& o : w.obligations)
      if (coin(rng) && coin(rng)) w.g.insert(c, Term::iri(vocab::has_obligations), o);
  }
  for (const auto& o : w.obligations) {
    w.g.insert(o, type, Term::iri(vocab::obligation_class));
    some(o, vocab::has_state, states);
    some(o, vocab::has_end_date, dates);
  }
  some(ex("stray"), vocab::has_contract_status, statuses);
  some(ex("stray"), vocab::has_end_date, dates);
  return w;
}

}  // namespace ccv::testing
