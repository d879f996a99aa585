#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "cabalsim/errors.hpp"

namespace cabalsim {

// Fixed formatting so reruns produce byte-identical files.
inline std::string csv_number(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", v);
  return buffer;
}

inline std::string csv_number(int v) { return std::to_string(v); }
inline std::string csv_number(long long v) { return std::to_string(v); }

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::string& header)
      : path_(path), out_(path) {
    if (!out_) throw IoError("cannot open " + path.string() + " for writing");
    out_ << header << '\n';
  }

  template <typename... Fields>
  void row(const Fields&... fields) {
    bool first = true;
    ((out_ << (first ? "" : ","), first = false, write_field(fields)), ...);
    out_ << '\n';
    ++rows_;
  }

  void close() {
    out_.flush();
    if (!out_) throw IoError("write failed for " + path_.string());
    out_.close();
  }

  long long rows() const { return rows_; }

 private:
  void write_field(const std::string& s) { out_ << s; }
  void write_field(const char* s) { out_ << s; }
  void write_field(double v) { out_ << csv_number(v); }
  void write_field(int v) { out_ << v; }
  void write_field(long long v) { out_ << v; }
  void write_field(unsigned long long v) { out_ << v; }

  std::filesystem::path path_;
  std::ofstream out_;
  long long rows_ = 0;
};

}  // namespace cabalsim
