#pragma once
#include "negbeta/codes.hpp"
#include "negbeta/exchange.hpp"
#include "negbeta/measure.hpp"
#include "negbeta/numeration.hpp"
#include "negbeta/ordering.hpp"

#include <json.hpp>

namespace negbeta {

using json = nlohmann::json;

// Big integers travel as decimal strings.
json mpz_to_json(const mpz_class& v);
mpz_class mpz_from_json(const json& j);

void to_json(json& j, const DigitSequence& s);
void from_json(const json& j, DigitSequence& s);

void to_json(json& j, const Base& b);
Base base_from_json(const json& j);

void to_json(json& j, const SequenceResult& r);
void from_json(const json& j, SequenceResult& r);

void to_json(json& j, const Expansion& e);
void from_json(const json& j, Expansion& e);

void to_json(json& j, const OrderResult& r);
void from_json(const json& j, OrderResult& r);

void to_json(json& j, const AdmissibilityReport& r);
void from_json(const json& j, AdmissibilityReport& r);

void to_json(json& j, const FamilySpec& s);
void from_json(const json& j, FamilySpec& s);

void to_json(json& j, const CodeFamily& f);
void from_json(const json& j, CodeFamily& f);

void to_json(json& j, const SumEstimate& s);
void from_json(const json& j, SumEstimate& s);

void to_json(json& j, const CodeStatistics& s);
void from_json(const json& j, CodeStatistics& s);

void to_json(json& j, const Block& b);
void from_json(const json& j, Block& b);

void to_json(json& j, const Decomposition& d);
void from_json(const json& j, Decomposition& d);

void to_json(json& j, const SeriesReport& r);
void from_json(const json& j, SeriesReport& r);

void to_json(json& j, const Classification& c);
void from_json(const json& j, Classification& c);

void to_json(json& j, const CylinderMeasure& m);
void from_json(const json& j, CylinderMeasure& m);

void to_json(json& j, const PatternMatch& p);
void from_json(const json& j, PatternMatch& p);

void to_json(json& j, const IntransitiveResult& r);
void from_json(const json& j, IntransitiveResult& r);

void to_json(json& j, const QueryFrequency& q);
void from_json(const json& j, QueryFrequency& q);

void to_json(json& j, const SimulationReport& r);
void from_json(const json& j, SimulationReport& r);

} // namespace negbeta
