// Copyright 2026 The mge Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mge/corpus.hpp"

namespace mge::testing {

inline TermAnnotation term(std::string correct, std::string wrong, PosTag pos,
                           std::optional<int> chain = std::nullopt) {
  return TermAnnotation{std::move(correct), std::move(wrong), pos, chain};
}

inline SentenceEntry entry(std::string id, std::string ref, GenderLabel gender,
                           std::vector<TermAnnotation> terms, std::string src = "src",
                           std::string category = "1F") {
  SentenceEntry e;
  e.id = std::move(id);
  e.src = std::move(src);
  e.ref = std::move(ref);
  e.gender = gender;
  e.category = std::move(category);
  e.terms = std::move(terms);
  return e;
}

inline Corpus parse_string(const std::string& tsv, const ParseOptions& opts = {}) {
  std::istringstream in(tsv);
  return parse_corpus(in, opts);
}

inline constexpr const char* kHeader = "ID\tSRC\tREF\tGENDER\tCATEGORY\tGENDERTERMS\n";

/// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("mge-test-" + std::to_string(rd()) + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }

  std::string write(const std::string& name, const std::string& content) const {
    std::ofstream out(file(name), std::ios::binary);
    out << content;
    return file(name);
  }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

}  // namespace mge::testing
