#pragma once

#include <string>
#include <string_view>

namespace ccv::vocab {

inline constexpr std::string_view rdf_ns = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view xsd_ns = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view sh_ns = "http://www.w3.org/ns/shacl#";
inline constexpr std::string_view shr_ns = "https://www.w3.org/ns/shacl/repairs#";
inline constexpr std::string_view fibo_ns =
    "https://spec.edmcouncil.org/fibo/ontology/FND/Agreements/Contracts/";
inline constexpr std::string_view core_ns = "http://ontologies.atb-bremen.de/smashHitCore#";
inline constexpr std::string_view test_ns = "http://example.org/ccv#";

inline std::string rdf(std::string_view local) { return std::string(rdf_ns) + std::string(local); }
inline std::string xsd(std::string_view local) { return std::string(xsd_ns) + std::string(local); }
inline std::string sh(std::string_view local) { return std::string(sh_ns) + std::string(local); }
inline std::string shr(std::string_view local) { return std::string(shr_ns) + std::string(local); }
inline std::string fibo(std::string_view local) { return std::string(fibo_ns) + std::string(local); }
inline std::string core(std::string_view local) { return std::string(core_ns) + std::string(local); }
inline std::string ex(std::string_view local) { return std::string(test_ns) + std::string(local); }

// Datatypes
inline const std::string xsd_string = xsd("string");
inline const std::string xsd_integer = xsd("integer");
inline const std::string xsd_decimal = xsd("decimal");
inline const std::string xsd_double = xsd("double");
inline const std::string xsd_boolean = xsd("boolean");
inline const std::string xsd_date_time = xsd("dateTime");
inline const std::string xsd_date = xsd("date");
inline const std::string rdf_lang_string = rdf("langString");

inline const std::string rdf_type = rdf("type");
inline const std::string rdf_first = rdf("first");
inline const std::string rdf_rest = rdf("rest");
inline const std::string rdf_nil = rdf("nil");

// Contract lifecycle model
inline const std::string contract_class = fibo("Contract");
inline const std::string obligation_class = core("Obligation");
inline const std::string has_contract_status = core("hasContractStatus");
inline const std::string has_obligations = core("hasObligations");
inline const std::string has_state = core("hasState");
inline const std::string has_end_date = core("hasEndDate");
inline const std::string status_pending = core("statusPending");
inline const std::string status_fulfilled = core("statusFulfilled");
inline const std::string status_violated = core("statusViolated");
inline const std::string pending_state = core("PendingState");
inline const std::string fulfilled_state = core("FulfilledState");
inline const std::string violated_state = core("ViolatedState");

}  // namespace ccv::vocab
