#include "tirc/imageio.hpp"

#include <fstream>
#include <stdexcept>

#include <opencv2/imgcodecs.hpp>

#include <json.hpp>

namespace tirc {

namespace {

uint8_t to_u8(float v) {
    float s = v * 255.f + 0.5f;
    return static_cast<uint8_t>(std::clamp(s, 0.f, 255.f));
}

void imwrite_or_throw(const std::filesystem::path& path, const cv::Mat& m) {
    if (!cv::imwrite(path.string(), m))
        throw std::runtime_error("failed to write " + path.string());
}

cv::Mat imread_or_throw(const std::filesystem::path& path, int flags) {
    cv::Mat m = cv::imread(path.string(), flags);
    if (m.empty()) throw std::runtime_error("failed to read " + path.string());
    return m;
}

}  // namespace

void write_png(const std::filesystem::path& path, const Tensor& t) {
    if (t.channels != 1 && t.channels != 3)
        throw std::invalid_argument("write_png: tensor must have 1 or 3 channels");
    cv::Mat m(t.height, t.width, t.channels == 1 ? CV_8UC1 : CV_8UC3);
    for (int y = 0; y < t.height; ++y)
        for (int x = 0; x < t.width; ++x) {
            if (t.channels == 1) {
                m.at<uint8_t>(y, x) = to_u8(t.at(0, y, x));
            } else {
                // OpenCV stores BGR.
                m.at<cv::Vec3b>(y, x) =
                    cv::Vec3b(to_u8(t.at(2, y, x)), to_u8(t.at(1, y, x)), to_u8(t.at(0, y, x)));
            }
        }
    imwrite_or_throw(path, m);
}

void write_png(const std::filesystem::path& path, const GrayMap& g) {
    cv::Mat m(g.height, g.width, CV_8UC1);
    for (int y = 0; y < g.height; ++y)
        for (int x = 0; x < g.width; ++x) m.at<uint8_t>(y, x) = to_u8(g.at(y, x));
    imwrite_or_throw(path, m);
}

Tensor read_png(const std::filesystem::path& path) {
    cv::Mat m = imread_or_throw(path, cv::IMREAD_UNCHANGED);
    if (m.channels() == 1) {
        Tensor t(1, m.rows, m.cols);
        for (int y = 0; y < m.rows; ++y)
            for (int x = 0; x < m.cols; ++x)
                t.at(0, y, x) = m.at<uint8_t>(y, x) / 255.f;
        return t;
    }
    if (m.channels() == 3) {
        Tensor t(3, m.rows, m.cols);
        for (int y = 0; y < m.rows; ++y)
            for (int x = 0; x < m.cols; ++x) {
                auto px = m.at<cv::Vec3b>(y, x);
                t.at(0, y, x) = px[2] / 255.f;
                t.at(1, y, x) = px[1] / 255.f;
                t.at(2, y, x) = px[0] / 255.f;
            }
        return t;
    }
    throw std::runtime_error("unsupported channel count in " + path.string());
}

GrayMap read_png_gray(const std::filesystem::path& path) {
    cv::Mat m = imread_or_throw(path, cv::IMREAD_GRAYSCALE);
    GrayMap g(m.rows, m.cols);
    for (int y = 0; y < m.rows; ++y)
        for (int x = 0; x < m.cols; ++x) g.at(y, x) = m.at<uint8_t>(y, x) / 255.f;
    return g;
}

void write_mask_png(const std::filesystem::path& path, const LabelMask& m) {
    cv::Mat img(m.height, m.width, CV_8UC1);
    for (int y = 0; y < m.height; ++y)
        for (int x = 0; x < m.width; ++x) {
            int32_t v = m.at(y, x);
            if (v < 0 || v > 255)
                throw std::invalid_argument("write_mask_png: id outside [0,255]");
            img.at<uint8_t>(y, x) = static_cast<uint8_t>(v);
        }
    imwrite_or_throw(path, img);
}

LabelMask read_mask_png(const std::filesystem::path& path) {
    cv::Mat img = imread_or_throw(path, cv::IMREAD_GRAYSCALE);
    LabelMask m(img.rows, img.cols);
    for (int y = 0; y < img.rows; ++y)
        for (int x = 0; x < img.cols; ++x) m.at(y, x) = img.at<uint8_t>(y, x);
    return m;
}

namespace {

void write_raw(const std::filesystem::path& path, const std::vector<float>& data,
               const nlohmann::json& header) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("failed to open " + path.string());
    f.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size() * sizeof(float)));
    std::ofstream hf(path.string() + ".json");
    hf << header.dump(2) << "\n";
}

std::vector<float> read_raw(const std::filesystem::path& path, size_t expected) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("failed to open " + path.string());
    std::vector<float> data(expected);
    f.read(reinterpret_cast<char*>(data.data()),
           static_cast<std::streamsize>(expected * sizeof(float)));
    if (static_cast<size_t>(f.gcount()) != expected * sizeof(float))
        throw std::runtime_error("short read from " + path.string());
    return data;
}

nlohmann::json read_header(const std::filesystem::path& path) {
    std::ifstream hf(path.string() + ".json");
    if (!hf) throw std::runtime_error("missing header " + path.string() + ".json");
    nlohmann::json j;
    hf >> j;
    return j;
}

}  // namespace

void write_prob_raw(const std::filesystem::path& path, const ProbTensor& p) {
    write_raw(path, p.data,
              {{"n_classes", p.n_classes}, {"h", p.height}, {"w", p.width}});
}

ProbTensor read_prob_raw(const std::filesystem::path& path) {
    auto j = read_header(path);
    ProbTensor p(j.at("n_classes").get<int>(), j.at("h").get<int>(), j.at("w").get<int>());
    p.data = read_raw(path, p.size());
    return p;
}

void write_tensor_raw(const std::filesystem::path& path, const Tensor& t) {
    write_raw(path, t.data,
              {{"channels", t.channels}, {"h", t.height}, {"w", t.width}});
}

Tensor read_tensor_raw(const std::filesystem::path& path) {
    auto j = read_header(path);
    Tensor t(j.at("channels").get<int>(), j.at("h").get<int>(), j.at("w").get<int>());
    t.data = read_raw(path, t.size());
    return t;
}

}  // namespace tirc
