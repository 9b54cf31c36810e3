#pragma once

#include <filesystem>
#include <fstream>
#include <string>

namespace testsupport {

// Scratch file under the system temp dir, removed on destruction.
class TempFile {
 public:
  TempFile(const std::string& name, const std::string& contents) {
    path_ = (std::filesystem::temp_directory_path() / name).string();
    std::ofstream out(path_, std::ios::binary);
    out << contents;
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace testsupport
