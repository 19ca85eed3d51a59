// Copyright 2026 The concomp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef CONCOMP_LABEL_HPP_
#define CONCOMP_LABEL_HPP_

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace concomp {

// Outcome label: an atom (string) or a tuple of labels. Tuples carry the
// structure of joints, transcripts, and reduction seeds; atoms sort before
// tuples so orderings stay stable when the two mix.
class Label {
 public:
  Label() = default;
  static Label atom(std::string text) {
    Label l;
    l.text_ = std::move(text);
    return l;
  }
  static Label tuple(std::vector<Label> parts) {
    Label l;
    l.tuple_ = true;
    l.parts_ = std::move(parts);
    return l;
  }
  static Label pair(Label a, Label b) {
    return tuple({std::move(a), std::move(b)});
  }
  static Label unit() { return tuple({}); }

  bool is_tuple() const { return tuple_; }
  const std::string& text() const { return text_; }
  const std::vector<Label>& parts() const { return parts_; }

  friend std::strong_ordering operator<=>(const Label& a, const Label& b) {
    if (a.tuple_ != b.tuple_) return a.tuple_ <=> b.tuple_;
    if (!a.tuple_) return a.text_ <=> b.text_;
    return a.parts_ <=> b.parts_;
  }
  friend bool operator==(const Label& a, const Label& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

  std::string str() const {
    if (!tuple_) return text_;
    std::string out = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) out += ",";
      out += parts_[i].str();
    }
    out += ")";
    return out;
  }

  nlohmann::json to_json() const {
    if (!tuple_) return text_;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : parts_) arr.push_back(p.to_json());
    return arr;
  }

  static Label from_json(const nlohmann::json& j) {
    if (j.is_array()) {
      std::vector<Label> parts;
      for (const auto& e : j) parts.push_back(from_json(e));
      return tuple(std::move(parts));
    }
    if (j.is_number_integer()) return atom(std::to_string(j.get<long long>()));
    return atom(j.get<std::string>());
  }

 private:
  bool tuple_ = false;
  std::string text_;
  std::vector<Label> parts_;
};

}  // namespace concomp

#endif  // CONCOMP_LABEL_HPP_
