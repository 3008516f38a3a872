#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace discourse::uni {

inline constexpr char32_t kZwnj = U'‌';

/// Decodes UTF-8 into codepoints. Invalid byte sequences become U+FFFD.
std::u32string decode_utf8(std::string_view s);

std::string encode_utf8(std::u32string_view s);

void append_utf8(std::string& out, char32_t cp);

/// Unicode White_Space property (the standard list, not locale dependent).
bool is_whitespace(char32_t cp);

/// Punctuation for tokenization purposes: ASCII and common Arabic-script,
/// general and CJK/fullwidth punctuation blocks. '#' and '_' are carved out
/// at the tokenizer level, not here.
bool is_punctuation(char32_t cp);

/// NFC normalization (ICU-backed).
std::string nfc(std::string_view utf8);

}  // namespace discourse::uni
