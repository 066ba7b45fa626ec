#pragma once

// Maps JSON paths such as "sensors[3].fire_history" to the 1-based line they appear on.

#include <cstddef>
#include <iterator>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace wildfire::detail {

class LineCountingIterator {
 public:
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  LineCountingIterator() = default;
  LineCountingIterator(const char* p, std::size_t* line) : p_(p), line_(line) {}

  reference operator*() const { return *p_; }
  LineCountingIterator& operator++() {
    if (*p_ == '\n') ++*line_;
    ++p_;
    return *this;
  }
  LineCountingIterator operator++(int) {
    auto tmp = *this;
    ++*this;
    return tmp;
  }
  friend bool operator==(const LineCountingIterator& a, const LineCountingIterator& b) {
    return a.p_ == b.p_;
  }

 private:
  const char* p_ = nullptr;
  std::size_t* line_ = nullptr;
};

class LineIndex {
 public:
  explicit LineIndex(const std::string& text) {
    Handler h{&line_, {}, {}, {}};
    LineCountingIterator first(text.data(), &line_);
    LineCountingIterator last(text.data() + text.size(), &line_);
    nlohmann::json::sax_parse(first, last, &h);
    lines_ = std::move(h.lines);
  }

  /// Line of the path, or of its closest recorded ancestor; 0 if nothing matches.
  std::size_t line_of(std::string path) const {
    while (true) {
      if (auto it = lines_.find(path); it != lines_.end()) return it->second;
      const auto cut = path.find_last_of(".[");
      if (cut == std::string::npos || cut == 0) return 0;
      path.resize(cut);
    }
  }

 private:
  struct Frame {
    bool array = false;
    std::size_t index = 0;
    std::string path;
  };

  struct Handler {
    std::size_t* line;
    std::vector<Frame> stack;
    std::map<std::string, std::size_t> lines;
    std::string pending_key;

    std::string value_path() {
      if (stack.empty()) return {};
      auto& top = stack.back();
      if (top.array) return top.path + "[" + std::to_string(top.index++) + "]";
      return top.path.empty() ? pending_key : top.path + "." + pending_key;
    }
    bool scalar() {
      value_path();
      return true;
    }
    bool null() { return scalar(); }
    bool boolean(bool) { return scalar(); }
    bool number_integer(nlohmann::json::number_integer_t) { return scalar(); }
    bool number_unsigned(nlohmann::json::number_unsigned_t) { return scalar(); }
    bool number_float(nlohmann::json::number_float_t, const std::string&) { return scalar(); }
    bool string(std::string&) { return scalar(); }
    bool binary(nlohmann::json::binary_t&) { return scalar(); }
    bool start_object(std::size_t) {
      auto path = value_path();
      lines.emplace(path, *line);
      stack.push_back({false, 0, std::move(path)});
      return true;
    }
    bool end_object() {
      stack.pop_back();
      return true;
    }
    bool start_array(std::size_t) {
      auto path = value_path();
      lines.emplace(path, *line);
      stack.push_back({true, 0, std::move(path)});
      return true;
    }
    bool end_array() {
      stack.pop_back();
      return true;
    }
    bool key(std::string& k) {
      pending_key = k;
      const auto& top = stack.back();
      lines.emplace(top.path.empty() ? k : top.path + "." + k, *line);
      return true;
    }
    bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception&) {
      return false;
    }
  };

  std::size_t line_ = 1;
  std::map<std::string, std::size_t> lines_;
};

}  // namespace wildfire::detail
