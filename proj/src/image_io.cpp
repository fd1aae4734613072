#include "act/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "act/error.hpp"

#ifdef ACT_HAVE_OPENCV
#include <opencv2/imgcodecs.hpp>
#endif

namespace act {
namespace {

std::string lower_ext(const std::string& path) {
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos) return "";
    std::string ext = path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

// Reads the next whitespace-delimited token, skipping '#' comment lines.
int next_pnm_int(std::istream& in, const std::string& path) {
    for (;;) {
        int c = in.peek();
        if (c == EOF) throw DataError(path + ": truncated pnm header");
        if (std::isspace(c)) {
            in.get();
            continue;
        }
        if (c == '#') {
            std::string line;
            std::getline(in, line);
            continue;
        }
        break;
    }
    int value = 0;
    if (!(in >> value)) throw DataError(path + ": malformed pnm header");
    return value;
}

GrayFrame load_pnm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(path + ": cannot open");
    char p = 0, kind = 0;
    in.get(p);
    in.get(kind);
    if (p != 'P' || (kind != '2' && kind != '3' && kind != '5' && kind != '6')) {
        throw DataError(path + ": not a supported pnm file");
    }
    const int w = next_pnm_int(in, path);
    const int h = next_pnm_int(in, path);
    const int maxval = next_pnm_int(in, path);
    if (w < 1 || h < 1) throw DataError(path + ": bad pnm dimensions");
    if (maxval < 1 || maxval > 255) throw DataError(path + ": only 8-bit pnm supported");

    const bool color = (kind == '3' || kind == '6');
    const bool binary = (kind == '5' || kind == '6');
    const std::size_t n = static_cast<std::size_t>(w) * h;
    std::vector<std::uint8_t> raw(n * (color ? 3 : 1));
    if (binary) {
        in.get();  // single whitespace after maxval
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
        if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
            throw DataError(path + ": truncated pnm pixel data");
        }
    } else {
        for (auto& v : raw) {
            int x = 0;
            if (!(in >> x)) throw DataError(path + ": truncated ascii pnm data");
            v = static_cast<std::uint8_t>(std::clamp(x, 0, 255));
        }
    }

    GrayFrame frame(w, h);
    if (color) {
        for (std::size_t i = 0; i < n; ++i) {
            frame.pixels[i] = luminance(raw[3 * i], raw[3 * i + 1], raw[3 * i + 2]);
        }
    } else {
        frame.pixels = std::move(raw);
    }
    return frame;
}

}  // namespace

std::uint8_t luminance(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    const double y = 0.299 * r + 0.587 * g + 0.114 * b;
    return static_cast<std::uint8_t>(std::lround(y));
}

GrayFrame load_gray(const std::string& path) {
    const std::string ext = lower_ext(path);
    if (ext == "pgm" || ext == "ppm" || ext == "pnm") return load_pnm(path);
#ifdef ACT_HAVE_OPENCV
    cv::Mat img = cv::imread(path, cv::IMREAD_COLOR);
    if (img.empty()) throw DataError(path + ": cannot decode image");
    GrayFrame frame(img.cols, img.rows);
    for (int y = 0; y < img.rows; ++y) {
        const cv::Vec3b* row = img.ptr<cv::Vec3b>(y);
        for (int x = 0; x < img.cols; ++x) {
            frame.at(x, y) = luminance(row[x][2], row[x][1], row[x][0]);
        }
    }
    return frame;
#else
    throw DataError(path + ": format ." + ext + " needs the OpenCV-backed build");
#endif
}

void save_pgm(const GrayFrame& frame, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError(path + ": cannot open for writing");
    out << "P5\n" << frame.width << " " << frame.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(frame.pixels.data()),
              static_cast<std::streamsize>(frame.pixels.size()));
    if (!out) throw DataError(path + ": write failed");
}

}  // namespace act
