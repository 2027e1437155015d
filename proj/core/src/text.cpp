// Copyright 2026 The joinrank Authors.
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

#include "joinrank/text.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/locid.h>

#include <array>
#include <charconv>
#include <cctype>
#include <stdexcept>

namespace joinrank {
namespace {

const icu::Normalizer2& nfkc() {
  static const icu::Normalizer2* instance = [] {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFKCInstance(status);
    if (U_FAILURE(status) || n == nullptr) {
      throw std::runtime_error("ICU NFKC normalizer unavailable");
    }
    return n;
  }();
  return *instance;
}

icu::UnicodeString nfkc_lower(const icu::UnicodeString& in) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString s = nfkc().normalize(in, status);
  s.toLower(icu::Locale::getRoot());
  // Lowercasing can leave a string that is not NFKC any more.
  if (!nfkc().isNormalized(s, status)) s = nfkc().normalize(s, status);
  return s;
}

int digits(std::string_view s, std::size_t pos, std::size_t count) {
  if (pos + count > s.size()) return -1;
  int v = 0;
  for (std::size_t i = pos; i < pos + count; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return -1;
    v = v * 10 + (s[i] - '0');
  }
  return v;
}

bool valid_ymd(int y, int m, int d) {
  if (y < 1 || m < 1 || m > 12 || d < 1) return false;
  static constexpr std::array<int, 12> kDays{31, 29, 31, 30, 31, 30,
                                             31, 31, 30, 31, 30, 31};
  if (d > kDays[m - 1]) return false;
  if (m == 2 && d == 29) {
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
  }
  return true;
}

// hh:mm[:ss]
bool valid_time(std::string_view t) {
  int hh = digits(t, 0, 2);
  if (hh < 0 || hh > 23 || t.size() < 5 || t[2] != ':') return false;
  int mm = digits(t, 3, 2);
  if (mm < 0 || mm > 59) return false;
  if (t.size() == 5) return true;
  if (t.size() != 8 || t[5] != ':') return false;
  int ss = digits(t, 6, 2);
  return ss >= 0 && ss <= 60;
}

}  // namespace

std::string fold_text(std::string_view raw) {
  icu::UnicodeString s = nfkc_lower(icu::UnicodeString::fromUTF8(
      icu::StringPiece(raw.data(), static_cast<int32_t>(raw.size()))));

  icu::UnicodeString collapsed;
  bool pending_space = false;
  for (int32_t i = 0; i < s.length();) {
    UChar32 cp = s.char32At(i);
    i += U16_LENGTH(cp);
    if (u_isUWhiteSpace(cp)) {
      pending_space = !collapsed.isEmpty();
      continue;
    }
    if (pending_space) collapsed.append(static_cast<UChar>(u' '));
    pending_space = false;
    collapsed.append(cp);
  }
  std::string out;
  collapsed.toUTF8String(out);
  return out;
}

bool is_null_token(std::string_view folded) {
  static constexpr std::array<std::string_view, 7> kNullTokens{
      "", "na", "n/a", "null", "none", "-", "nan"};
  for (auto token : kNullTokens) {
    if (folded == token) return true;
  }
  return false;
}

std::optional<std::string> normalize_value(std::string_view raw) {
  std::string folded = fold_text(raw);
  if (is_null_token(folded)) return std::nullopt;
  return folded;
}

bool parses_as_number(std::string_view value) {
  if (!value.empty() && value.front() == '+') value.remove_prefix(1);
  if (value.empty()) return false;
  // from_chars would also accept "inf" and "nan".
  char first = value.front() == '-' && value.size() > 1 ? value[1] : value.front();
  if (!std::isdigit(static_cast<unsigned char>(first)) && first != '.') {
    return false;
  }
  double parsed = 0.0;
  auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), parsed);
  return ec == std::errc() && ptr == value.data() + value.size();
}

bool parses_as_date(std::string_view value) {
  std::string_view date = value;
  std::string_view time;
  if (value.size() > 10) {
    if (value[10] != 'T' && value[10] != 't' && value[10] != ' ') return false;
    date = value.substr(0, 10);
    time = value.substr(11);
    if (!valid_time(time)) return false;
  }
  if (date.size() != 10) return false;

  if ((date[4] == '-' || date[4] == '/') && date[7] == date[4]) {
    return valid_ymd(digits(date, 0, 4), digits(date, 5, 2), digits(date, 8, 2));
  }
  if (date[2] == '/' && date[5] == '/') {
    return valid_ymd(digits(date, 6, 4), digits(date, 0, 2), digits(date, 3, 2));
  }
  if (date[2] == '.' && date[5] == '.') {
    return valid_ymd(digits(date, 6, 4), digits(date, 3, 2), digits(date, 0, 2));
  }
  return false;
}

std::vector<char32_t> decode_utf8(std::string_view text) {
  std::vector<char32_t> out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    auto b0 = static_cast<unsigned char>(text[i]);
    int len = b0 < 0x80 ? 1 : (b0 >> 5) == 0x6 ? 2 : (b0 >> 4) == 0xe ? 3
              : (b0 >> 3) == 0x1e ? 4 : 0;
    if (len == 0 || i + len > text.size()) {
      out.push_back(U'\uFFFD');
      ++i;
      continue;
    }
    char32_t cp = len == 1 ? b0 : b0 & (0x7f >> len);
    bool ok = true;
    for (int k = 1; k < len; ++k) {
      auto b = static_cast<unsigned char>(text[i + k]);
      if ((b & 0xc0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (b & 0x3f);
    }
    if (!ok) {
      out.push_back(U'\uFFFD');
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else {
    out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  }
}

}  // namespace joinrank
