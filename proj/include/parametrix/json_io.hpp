#ifndef PARAMETRIX_JSON_IO_HPP
#define PARAMETRIX_JSON_IO_HPP

#include <json.hpp>

#include "parametrix/cc.hpp"
#include "parametrix/duality.hpp"
#include "parametrix/janet.hpp"
#include "parametrix/spencer.hpp"

namespace parametrix {

nlohmann::json matrix_to_json(const OpMatrix &A);
OpMatrix matrix_from_json(const nlohmann::json &j);

nlohmann::json board_to_json(const Board &b);
nlohmann::json characters_to_json(const Characters &c);
nlohmann::json resolution_to_json(const Resolution &r);
nlohmann::json duality_to_json(const DualityReport &r);
nlohmann::json fi_to_json(const FiReport &r, const std::vector<std::string> &deps);

} // namespace parametrix

#endif
