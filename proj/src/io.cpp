#include "fermat/io.hpp"
#include "fermat/arith.hpp"
#include "fermat/certify.hpp"
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <omp.h>
#include <sstream>
#include <unistd.h>

namespace fermat {

void write_file_atomic(const std::string& path, const std::string& data) {
    namespace fs = std::filesystem;
    fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ostringstream tmpname;
    tmpname << path << ".tmp." << ::getpid() << "." << omp_get_thread_num();
    {
        std::ofstream f(tmpname.str(), std::ios::binary | std::ios::trunc);
        if (!f) throw Error("IO", "cannot write " + tmpname.str());
        f << data;
        if (!f) throw Error("IO", "short write " + tmpname.str());
    }
    fs::rename(tmpname.str(), p);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("IO", "cannot read " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

std::string cache_dir(int p) {
    const char* dir = std::getenv("FERMAT_CACHE_DIR");
    if (!dir || !*dir) return {};
    return std::string(dir) + "/p" + std::to_string(p) + "-" + normalization_fingerprint();
}

} // namespace fermat
