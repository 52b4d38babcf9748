#pragma once

#include <secview/parser.hpp>

#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fixtures {

inline std::string read_data(const std::string& name) {
  std::ifstream in(std::string(SECVIEW_DATA_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing data file " + name);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline std::shared_ptr<const secview::Schema> schema(const std::string& text) {
  return std::make_shared<const secview::Schema>(secview::parse_schema(text));
}

inline secview::Row row(std::initializer_list<secview::Value> vs) { return secview::Row(vs); }

inline secview::Value I(std::int64_t v) { return secview::Value::integer(v); }
inline secview::Value S(const char* s) { return secview::Value::symbol(s); }
inline secview::Value N() { return secview::Value::null(); }

} // namespace fixtures
