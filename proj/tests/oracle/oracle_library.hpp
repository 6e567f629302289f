#pragma once

// Library of fields with independently derived reference jets.

#include <functional>
#include <string>
#include <vector>

#include "dfforge/cdiff.hpp"
#include "dfforge/field.hpp"
#include "symbolic.hpp"

namespace dfforge::test {

struct OracleCase {
  std::string name;
  ScalarField field;
  std::function<oracle::RefJet(const CPoint&)> ref;
  /// Optional reference third derivatives.
  std::function<cd(const CPoint&, const std::array<WDir, 3>&)> third;
  /// Points avoid w = 0 for fields that are only smooth there in the flat sense.
  bool avoid_w_zero = false;
};

const std::vector<OracleCase>& oracle_library();
std::vector<CPoint> oracle_points(const OracleCase& c);

/// max over the jet entries of |engine - reference| / max over entries of |reference|.
double jet_rel_error(const Jet2& j, const oracle::RefJet& r);

}  // namespace dfforge::test
