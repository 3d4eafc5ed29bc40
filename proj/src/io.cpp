#include "espim/io.hpp"

#include <atomic>
#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <fcntl.h>
#include <unistd.h>

#include <openssl/evp.h>

namespace espim::io {

namespace fs = std::filesystem;

namespace {

fs::path temp_sibling(const fs::path& path)
{
    static std::atomic<unsigned long> counter{0};
    const auto n = counter.fetch_add(1);
    return path.parent_path() / ("." + path.filename().string() + ".tmp." + std::to_string(::getpid()) + "."
        + std::to_string(n));
}

void write_and_sync(const fs::path& path, std::string_view content)
{
    const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_EXCL | O_CLOEXEC, 0644);
    if (fd < 0)
        throw IoError("cannot create " + path.string() + ": " + std::strerror(errno));
    std::size_t written = 0;
    while (written < content.size()) {
        const ssize_t w = ::write(fd, content.data() + written, content.size() - written);
        if (w < 0) {
            if (errno == EINTR)
                continue;
            const int err = errno;
            ::close(fd);
            ::unlink(path.c_str());
            throw IoError("cannot write " + path.string() + ": " + std::strerror(err));
        }
        written += static_cast<std::size_t>(w);
    }
    if (::fsync(fd) != 0 || ::close(fd) != 0) {
        const int err = errno;
        ::unlink(path.c_str());
        throw IoError("cannot flush " + path.string() + ": " + std::strerror(err));
    }
}

} // namespace

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        throw IoError("cannot read " + path.string());
    return ss.str();
}

void write_file_atomic(const fs::path& path, std::string_view content)
{
    const fs::path tmp = temp_sibling(path);
    write_and_sync(tmp, content);
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        const int err = errno;
        ::unlink(tmp.c_str());
        throw IoError("cannot rename onto " + path.string() + ": " + std::strerror(err));
    }
}

bool create_file_atomic(const fs::path& path, std::string_view content)
{
    const fs::path tmp = temp_sibling(path);
    write_and_sync(tmp, content);
    // link(2) fails with EEXIST instead of replacing, which rename(2) would not.
    const int rc = ::link(tmp.c_str(), path.c_str());
    const int err = errno;
    ::unlink(tmp.c_str());
    if (rc == 0)
        return true;
    if (err == EEXIST)
        return false;
    throw IoError("cannot publish " + path.string() + ": " + std::strerror(err));
}

std::string sha256_hex(std::string_view bytes)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error("sha256 failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

} // namespace espim::io
