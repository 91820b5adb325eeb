#pragma once

#include <string>
#include <vector>

#include "knotsurf/khovanov.hpp"
#include "knotsurf/states.hpp"

namespace knotsurf {

std::string records_to_json(const std::vector<VerificationRecord>& records, int n,
                            const Rational& tau_sigma0);
std::string records_to_table(const std::vector<VerificationRecord>& records);
std::string khovanov_to_json(const KhovanovResult& kh);
std::string qvector_to_json(const QVector& v);

}  // namespace knotsurf
