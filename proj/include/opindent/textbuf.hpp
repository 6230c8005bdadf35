// Text storage and cursor arithmetic shared by every other layer.
#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace opindent {

/// Raised when an offset, span or line number falls outside the buffer.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

enum class Direction { Backward, Forward };

constexpr Direction reverse(Direction d) noexcept
{
    return d == Direction::Forward ? Direction::Backward : Direction::Forward;
}

struct LineCol {
    std::size_t line = 1;   ///< 1-based
    std::size_t column = 0; ///< 0-based, every character counts as one column
    friend bool operator==(const LineCol&, const LineCol&) = default;
};

std::u32string utf8_decode(std::string_view bytes);
std::string utf8_encode(std::u32string_view text);
std::string utf8_encode(char32_t ch);

/// Mutable text addressed by 0-based character offsets.
///
/// Every edit bumps `revision()` by exactly one; caches elsewhere key on it.
/// CRLF line endings are normalized to LF on load and can be restored on save.
class Buffer {
public:
    Buffer() = default;
    explicit Buffer(std::u32string text);

    static Buffer from_utf8(std::string_view bytes);
    std::string to_utf8() const;

    const std::u32string& text() const noexcept { return text_; }
    std::size_t size() const noexcept { return text_.size(); }
    bool empty() const noexcept { return text_.empty(); }
    char32_t at(std::size_t pos) const;
    std::uint64_t revision() const noexcept { return revision_; }
    bool had_crlf() const noexcept { return crlf_; }

    std::u32string_view slice(std::size_t start, std::size_t end) const;
    std::string slice_utf8(std::size_t start, std::size_t end) const;

    void replace(std::size_t start, std::size_t end, std::u32string_view new_text);

    /// Smallest offset touched by any edit made after `rev`, or size() when
    /// there were none.  Returns 0 when the edit log no longer reaches back.
    std::size_t lowest_edit_since(std::uint64_t rev) const noexcept;

    LineCol line_and_column(std::size_t pos) const;
    std::size_t line_count() const;
    std::size_t line_start(std::size_t line) const;
    /// Offset of the line's terminating newline, or size() for the last line.
    std::size_t line_end(std::size_t line) const;
    std::size_t line_of(std::size_t pos) const;
    /// Column of the first non-blank character, 0 for blank lines.
    std::size_t line_indentation(std::size_t line) const;
    /// Offset of the first non-blank character of `line` (line_end when blank).
    std::size_t line_content_start(std::size_t line) const;
    bool line_is_blank(std::size_t line) const;

private:
    void ensure_index() const;

    std::u32string text_;
    std::uint64_t revision_ = 0;
    bool crlf_ = false;

    struct Edit {
        std::uint64_t revision;
        std::size_t start;
    };
    std::vector<Edit> edits_;

    mutable std::vector<std::size_t> line_starts_;
    mutable std::uint64_t indexed_revision_ = ~std::uint64_t{0};
};

/// A position inside a buffer; kept within [0, size] by construction.
class Cursor {
public:
    Cursor(const Buffer& buffer, std::size_t pos);

    const Buffer& buffer() const noexcept { return *buffer_; }
    std::size_t pos() const noexcept { return pos_; }
    void set(std::size_t pos);
    bool at_start() const noexcept { return pos_ == 0; }
    bool at_end() const noexcept { return pos_ == buffer_->size(); }

private:
    const Buffer* buffer_;
    std::size_t pos_;
};

bool is_blank(char32_t ch) noexcept;

} // namespace opindent
