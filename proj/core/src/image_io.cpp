#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "bog/error.hpp"
#include "bog/image.hpp"

namespace bog {

Image load_image(const std::filesystem::path& path) {
  if (!std::filesystem::is_regular_file(path)) {
    throw IoError("cannot open image " + path.string());
  }
  const cv::Mat bgr = cv::imread(path.string(), cv::IMREAD_COLOR);
  if (bgr.empty()) {
    throw FormatError("cannot decode image " + path.string());
  }
  Image img(bgr.cols, bgr.rows);
  for (int y = 0; y < bgr.rows; ++y) {
    const auto* row = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < bgr.cols; ++x) {
      img(x, y) = Rgb{row[x][2], row[x][1], row[x][0]};
    }
  }
  return img;
}

void save_image(const Image& img, const std::filesystem::path& path) {
  if (img.empty()) throw InvalidInput("cannot save an empty image");
  cv::Mat bgr(img.height(), img.width(), CV_8UC3);
  for (int y = 0; y < img.height(); ++y) {
    auto* row = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < img.width(); ++x) {
      const Rgb& p = img(x, y);
      row[x] = cv::Vec3b(p.b, p.g, p.r);
    }
  }
  bool ok = false;
  try {
    ok = cv::imwrite(path.string(), bgr);
  } catch (const cv::Exception& e) {
    throw IoError("cannot write image " + path.string() + ": " + e.what());
  }
  if (!ok) throw IoError("cannot write image " + path.string());
}

}  // namespace bog
