#pragma once

#include <compare>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "icat/error.hpp"

namespace icat {

inline constexpr std::string_view kOpenAngle = "\xE2\x9F\xA8";   // ⟨
inline constexpr std::string_view kCloseAngle = "\xE2\x9F\xA9";  // ⟩
inline constexpr std::string_view kStar = "\xE2\x8B\x86";        // ⋆

inline bool is_valid_leaf_name(std::string_view s) {
  if (s.empty()) return false;
  if (s.find(kOpenAngle) != std::string_view::npos) return false;
  if (s.find(kCloseAngle) != std::string_view::npos) return false;
  for (unsigned char c : s) {
    if (c >= 0x80) continue;
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9')) continue;
    if (c == '_' || c == '.' || c == '-') continue;
    return false;
  }
  return true;
}

// An element of a finite set: a named leaf or a tuple of atoms. Atoms are
// compared by their canonical encoding.
class Atom {
 public:
  Atom() : enc_(std::string(kOpenAngle) + std::string(kCloseAngle)), parts_(empty_parts()) {}

  explicit Atom(std::string name) : enc_(std::move(name)) {
    if (!is_valid_leaf_name(enc_)) throw MalformedData("invalid atom name '" + enc_ + "'");
  }

  static Atom tuple(std::vector<Atom> parts) {
    Atom a;
    std::string enc(kOpenAngle);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) enc += ',';
      enc += parts[i].enc_;
    }
    enc += kCloseAngle;
    a.enc_ = std::move(enc);
    a.parts_ = std::make_shared<const std::vector<Atom>>(std::move(parts));
    return a;
  }

  bool is_tuple() const { return parts_ != nullptr; }
  std::size_t arity() const { return parts_ ? parts_->size() : 0; }
  const Atom& operator[](std::size_t i) const { return (*parts_)[i]; }
  const std::vector<Atom>& parts() const {
    static const std::vector<Atom> none;
    return parts_ ? *parts_ : none;
  }
  const std::string& str() const { return enc_; }

  friend bool operator==(const Atom& a, const Atom& b) { return a.enc_ == b.enc_; }
  friend std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
    return a.enc_ <=> b.enc_;
  }

 private:
  static std::shared_ptr<const std::vector<Atom>> empty_parts() {
    static const auto p = std::make_shared<const std::vector<Atom>>();
    return p;
  }

  std::string enc_;
  std::shared_ptr<const std::vector<Atom>> parts_;
};

inline Atom leaf(std::string name) { return Atom(std::move(name)); }
inline Atom tup(std::vector<Atom> parts) { return Atom::tuple(std::move(parts)); }

inline std::string join_atoms(const std::vector<Atom>& atoms, std::string_view sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) out += sep;
    out += atoms[i].str();
  }
  return out;
}

}  // namespace icat
