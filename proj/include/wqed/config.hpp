#ifndef WQED_CONFIG_HPP
#define WQED_CONFIG_HPP

#include <map>
#include <optional>
#include <string>

namespace wqed {

/// Flat key-value config: one `key = value` per line, '#' comments,
/// blank lines ignored.
std::map<std::string, std::string> load_config(const std::string& path);

std::optional<double> config_double(const std::map<std::string, std::string>& cfg,
                                    const std::string& key);

}  // namespace wqed

#endif
