#pragma once

#include <string>

#include "cdstab/charpoly.hpp"
#include "cdstab/conditioning.hpp"
#include "cdstab/constantcase.hpp"

namespace cdstab {

// JSON carries full binary64 values; the fixed-precision renderings are for
// eyeballing against printed references only.
std::string to_json(const StabilityReport& rep);
std::string to_json(const ConditionReport& rep);
std::string to_json(const ConstantCertificate& cert);

StabilityReport stability_report_from_json(const std::string& text);
ConditionReport condition_report_from_json(const std::string& text);

// --- numeric formatting for CSV/text emission (locale-independent) ---

// Full round-trip precision ("%.17g").
std::string format_full(double x);
// Fixed decimals.
std::string format_fixed(double x, int decimals);
// Mantissa notation with a four-digit mantissa: 0.001935871 -> "1935.87e-06".
std::string format_mantissa(double x);

}  // namespace cdstab
