#pragma once
#include <string>

namespace fermat {

// write to a sibling temporary, then rename over the target
void write_file_atomic(const std::string& path, const std::string& data);
std::string read_file(const std::string& path);
// $FERMAT_CACHE_DIR/p<p>-<fingerprint>, empty when the variable is unset
std::string cache_dir(int p);

} // namespace fermat
