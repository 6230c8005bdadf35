#include "opindent/textbuf.hpp"

#include <algorithm>

namespace opindent {

namespace {

constexpr char32_t kReplacement = 0xFFFD;
constexpr std::size_t kEditLogLimit = 4096;

} // namespace

std::u32string utf8_decode(std::string_view bytes)
{
    std::u32string out;
    out.reserve(bytes.size());
    std::size_t i = 0;
    while (i < bytes.size()) {
        const auto b0 = static_cast<unsigned char>(bytes[i]);
        std::size_t len = 0;
        char32_t cp = 0;
        if (b0 < 0x80) {
            len = 1;
            cp = b0;
        } else if ((b0 & 0xE0) == 0xC0) {
            len = 2;
            cp = b0 & 0x1F;
        } else if ((b0 & 0xF0) == 0xE0) {
            len = 3;
            cp = b0 & 0x0F;
        } else if ((b0 & 0xF8) == 0xF0) {
            len = 4;
            cp = b0 & 0x07;
        } else {
            out.push_back(kReplacement);
            ++i;
            continue;
        }
        if (i + len > bytes.size()) {
            out.push_back(kReplacement);
            ++i;
            continue;
        }
        bool ok = true;
        for (std::size_t k = 1; k < len; ++k) {
            const auto b = static_cast<unsigned char>(bytes[i + k]);
            if ((b & 0xC0) != 0x80) {
                ok = false;
                break;
            }
            cp = (cp << 6) | (b & 0x3F);
        }
        const bool overlong = (len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000);
        if (!ok || overlong || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
            out.push_back(kReplacement);
            ++i;
            continue;
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

std::string utf8_encode(char32_t ch)
{
    std::string out;
    if (ch < 0x80) {
        out.push_back(static_cast<char>(ch));
    } else if (ch < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (ch >> 6)));
        out.push_back(static_cast<char>(0x80 | (ch & 0x3F)));
    } else if (ch < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (ch >> 12)));
        out.push_back(static_cast<char>(0x80 | ((ch >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (ch & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (ch >> 18)));
        out.push_back(static_cast<char>(0x80 | ((ch >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((ch >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (ch & 0x3F)));
    }
    return out;
}

std::string utf8_encode(std::u32string_view text)
{
    std::string out;
    out.reserve(text.size());
    for (char32_t ch : text)
        out += utf8_encode(ch);
    return out;
}

bool is_blank(char32_t ch) noexcept
{
    return ch == U' ' || ch == U'\t' || ch == U'\f' || ch == U'\v' || ch == U'\r';
}

Buffer::Buffer(std::u32string text) : text_(std::move(text)) {}

Buffer Buffer::from_utf8(std::string_view bytes)
{
    std::u32string decoded = utf8_decode(bytes);
    Buffer buf;
    std::u32string normalized;
    normalized.reserve(decoded.size());
    for (std::size_t i = 0; i < decoded.size(); ++i) {
        if (decoded[i] == U'\r' && i + 1 < decoded.size() && decoded[i + 1] == U'\n') {
            buf.crlf_ = true;
            continue;
        }
        normalized.push_back(decoded[i]);
    }
    buf.text_ = std::move(normalized);
    return buf;
}

std::string Buffer::to_utf8() const
{
    if (!crlf_)
        return utf8_encode(text_);
    std::string out;
    out.reserve(text_.size() + text_.size() / 32);
    for (char32_t ch : text_) {
        if (ch == U'\n')
            out += "\r\n";
        else
            out += utf8_encode(ch);
    }
    return out;
}

char32_t Buffer::at(std::size_t pos) const
{
    if (pos >= text_.size())
        throw RangeError("offset " + std::to_string(pos) + " outside buffer of size " + std::to_string(text_.size()));
    return text_[pos];
}

std::u32string_view Buffer::slice(std::size_t start, std::size_t end) const
{
    if (start > end || end > text_.size())
        throw RangeError("invalid span [" + std::to_string(start) + ", " + std::to_string(end) + ")");
    return std::u32string_view(text_).substr(start, end - start);
}

std::string Buffer::slice_utf8(std::size_t start, std::size_t end) const
{
    return utf8_encode(slice(start, end));
}

void Buffer::replace(std::size_t start, std::size_t end, std::u32string_view new_text)
{
    if (start > end || end > text_.size())
        throw RangeError("invalid span [" + std::to_string(start) + ", " + std::to_string(end) + ")");
    text_.replace(start, end - start, new_text);
    ++revision_;
    if (edits_.size() >= kEditLogLimit)
        edits_.erase(edits_.begin(), edits_.begin() + static_cast<std::ptrdiff_t>(kEditLogLimit / 2));
    edits_.push_back({revision_, start});
}

std::size_t Buffer::lowest_edit_since(std::uint64_t rev) const noexcept
{
    if (rev >= revision_)
        return text_.size();
    if (edits_.empty() || edits_.front().revision > rev + 1)
        return 0;
    std::size_t lowest = text_.size();
    for (auto it = edits_.rbegin(); it != edits_.rend() && it->revision > rev; ++it)
        lowest = std::min(lowest, it->start);
    return lowest;
}

void Buffer::ensure_index() const
{
    if (indexed_revision_ == revision_)
        return;
    line_starts_.clear();
    line_starts_.push_back(0);
    for (std::size_t i = 0; i < text_.size(); ++i)
        if (text_[i] == U'\n')
            line_starts_.push_back(i + 1);
    indexed_revision_ = revision_;
}

LineCol Buffer::line_and_column(std::size_t pos) const
{
    if (pos > text_.size())
        throw RangeError("offset " + std::to_string(pos) + " outside buffer of size " + std::to_string(text_.size()));
    ensure_index();
    auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), pos);
    const auto line = static_cast<std::size_t>(it - line_starts_.begin());
    return {line, pos - line_starts_[line - 1]};
}

std::size_t Buffer::line_count() const
{
    ensure_index();
    return line_starts_.size();
}

std::size_t Buffer::line_start(std::size_t line) const
{
    ensure_index();
    if (line == 0 || line > line_starts_.size())
        throw RangeError("line " + std::to_string(line) + " does not exist");
    return line_starts_[line - 1];
}

std::size_t Buffer::line_end(std::size_t line) const
{
    ensure_index();
    if (line == 0 || line > line_starts_.size())
        throw RangeError("line " + std::to_string(line) + " does not exist");
    return line < line_starts_.size() ? line_starts_[line] - 1 : text_.size();
}

std::size_t Buffer::line_of(std::size_t pos) const
{
    return line_and_column(pos).line;
}

std::size_t Buffer::line_content_start(std::size_t line) const
{
    std::size_t pos = line_start(line);
    const std::size_t end = line_end(line);
    while (pos < end && is_blank(text_[pos]))
        ++pos;
    return pos;
}

bool Buffer::line_is_blank(std::size_t line) const
{
    return line_content_start(line) == line_end(line);
}

std::size_t Buffer::line_indentation(std::size_t line) const
{
    const std::size_t content = line_content_start(line);
    if (content == line_end(line))
        return 0;
    return content - line_start(line);
}

Cursor::Cursor(const Buffer& buffer, std::size_t pos) : buffer_(&buffer), pos_(0)
{
    set(pos);
}

void Cursor::set(std::size_t pos)
{
    if (pos > buffer_->size())
        throw RangeError("cursor offset " + std::to_string(pos) + " outside buffer of size " +
                         std::to_string(buffer_->size()));
    pos_ = pos;
}

} // namespace opindent
