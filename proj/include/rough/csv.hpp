#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rough/path.hpp"
#include "rough/rough_path.hpp"
#include "rough/tensor.hpp"

namespace rough {

/// Decimal with 17 significant digits (round-trip exact for doubles).
std::string format_value(double v);

/// `t,x1,...,xd` rows.
void write_sampled_path_csv(std::ostream& os, const SampledPath& x);
SampledPath read_sampled_path_csv(std::istream& is);

/// `t,<deg1>,<deg2 row-major>[,<deg3>]` per grid point (basepoint elements).
void write_rough_path_csv(std::ostream& os, const RoughPath& X);

/// `degree,word,value` rows; word is the 1-based multi-index as concatenated
/// digits (dims are single-digit here).
void write_signature_csv(std::ostream& os, const Signature& sig);

/// Generic table writer: header row then value rows, 17 significant digits.
void write_table_csv(std::ostream& os, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);

}  // namespace rough
