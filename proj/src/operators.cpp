#include "fpl/operators.hpp"

#include <map>

namespace fpl {

std::optional<OpDef> infix_op(const std::string& name) {
  static const std::map<std::string, OpDef> table = {
      {":-", {1200, OpType::XFX}},  {":~", {1200, OpType::XFX}},
      {":#", {1200, OpType::XFX}},  {",", {1000, OpType::XFY}},
      {"=", {700, OpType::XFX}},    {"\\=", {700, OpType::XFX}},
      {"==", {700, OpType::XFX}},   {"\\==", {700, OpType::XFX}},
      {"is", {700, OpType::XFX}},   {"<", {700, OpType::XFX}},
      {">", {700, OpType::XFX}},    {"=<", {700, OpType::XFX}},
      {">=", {700, OpType::XFX}},   {"=:=", {700, OpType::XFX}},
      {"=\\=", {700, OpType::XFX}}, {".<.", {700, OpType::XFX}},
      {".>.", {700, OpType::XFX}},  {".=<.", {700, OpType::XFX}},
      {".<=.", {700, OpType::XFX}}, {".>=.", {700, OpType::XFX}},
      {".=.", {700, OpType::XFX}},  {"+", {500, OpType::YFX}},
      {"-", {500, OpType::YFX}},    {"*", {400, OpType::YFX}},
      {"/", {400, OpType::YFX}},    {"//", {400, OpType::YFX}},
      {"mod", {400, OpType::YFX}},
  };
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

std::optional<OpDef> prefix_op(const std::string& name) {
  static const std::map<std::string, OpDef> table = {
      {":-", {1200, OpType::FX}},
      {"?-", {1200, OpType::FX}},
      {"-", {200, OpType::FY}},
  };
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

}  // namespace fpl
