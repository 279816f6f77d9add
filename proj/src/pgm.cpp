#include "effdiff/pgm.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace effdiff {

namespace {

struct Cursor {
    const std::string& data;
    std::size_t pos = 0;

    bool eof() const { return pos >= data.size(); }
    char peek() const { return data[pos]; }

    void skip_space_and_comments() {
        while (!eof()) {
            if (std::isspace(static_cast<unsigned char>(peek()))) {
                ++pos;
            } else if (peek() == '#') {
                while (!eof() && peek() != '\n') ++pos;
            } else {
                break;
            }
        }
    }

    long parse_int(const char* what) {
        skip_space_and_comments();
        if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
            throw PgmParseError(std::string("expected ") + what, pos);
        long v = 0;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (peek() - '0');
            if (v > 1'000'000'000L) throw PgmParseError(std::string(what) + " out of range", pos);
            ++pos;
        }
        return v;
    }
};

}  // namespace

MaskReadResult read_pgm_mask(const std::string& path, int threshold, double pixel_size) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_pgm_mask: cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string data = buffer.str();

    Cursor cur{data};
    cur.skip_space_and_comments();
    if (data.size() - cur.pos < 2 || data[cur.pos] != 'P' ||
        (data[cur.pos + 1] != '2' && data[cur.pos + 1] != '5'))
        throw PgmParseError("not a P2/P5 PGM file", cur.pos);
    const bool binary = data[cur.pos + 1] == '5';
    cur.pos += 2;

    const long width = cur.parse_int("width");
    const long height = cur.parse_int("height");
    const long maxval = cur.parse_int("maxval");
    if (width < 1 || height < 1) throw PgmParseError("degenerate dimensions", cur.pos);
    if (maxval < 1 || maxval > 255)
        throw PgmParseError("only 8-bit PGMs are supported (maxval <= 255)", cur.pos);

    const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    std::vector<int> pixels;
    pixels.reserve(n);

    if (binary) {
        if (cur.eof() || !std::isspace(static_cast<unsigned char>(cur.peek())))
            throw PgmParseError("expected single whitespace before raster data", cur.pos);
        ++cur.pos;
        if (data.size() - cur.pos < n)
            throw PgmParseError("truncated raster data", data.size());
        for (std::size_t i = 0; i < n; ++i)
            pixels.push_back(static_cast<unsigned char>(data[cur.pos + i]));
        cur.pos += n;
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const long v = cur.parse_int("pixel value");
            if (v > maxval) throw PgmParseError("pixel value exceeds maxval", cur.pos);
            pixels.push_back(static_cast<int>(v));
        }
    }

    const bool explicit_threshold = threshold >= 0;
    const int cut = explicit_threshold ? threshold : static_cast<int>(maxval / 2);

    MaskReadResult result;
    result.binary_source = binary;
    result.mask.width = static_cast<int>(width);
    result.mask.height = static_cast<int>(height);
    result.mask.pixel_size = pixel_size;
    result.mask.labels.resize(n);
    std::set<int> distinct;
    for (std::size_t i = 0; i < n; ++i) {
        result.mask.labels[i] = pixels[i] <= cut ? 1 : 0;
        if (distinct.size() < 3) distinct.insert(pixels[i]);
    }
    if (!explicit_threshold && distinct.size() > 2)
        result.warning = "grayscale content thresholded at the midpoint (" +
                         std::to_string(cut) + "); pass an explicit threshold to override";
    return result;
}

void write_pgm_mask(const PhaseMask& mask, const std::string& path, bool binary) {
    mask.validate();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_pgm_mask: cannot open " + path);
    out << (binary ? "P5" : "P2") << "\n"
        << mask.width << " " << mask.height << "\n255\n";
    if (binary) {
        std::string row(static_cast<size_t>(mask.width), '\0');
        for (int y = 0; y < mask.height; ++y) {
            for (int x = 0; x < mask.width; ++x)
                row[static_cast<size_t>(x)] = mask.at(x, y) ? '\0' : '\xff';
            out.write(row.data(), mask.width);
        }
    } else {
        for (int y = 0; y < mask.height; ++y) {
            for (int x = 0; x < mask.width; ++x)
                out << (mask.at(x, y) ? "0" : "255") << (x + 1 == mask.width ? "" : " ");
            out << "\n";
        }
    }
    if (!out) throw std::runtime_error("write_pgm_mask: write failed for " + path);
}

}  // namespace effdiff
