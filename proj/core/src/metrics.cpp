#include <algorithm>

#include <json.hpp>

#include "planvec/planio.hpp"

namespace planvec::planio {

double mean_iou(const raster::BinaryMask& pred, const raster::BinaryMask& gt) {
  if (pred.width() != gt.width() || pred.height() != gt.height()) {
    throw std::invalid_argument("mean_iou: masks are " + std::to_string(pred.width()) + "x" +
                                std::to_string(pred.height()) + " and " + std::to_string(gt.width()) + "x" +
                                std::to_string(gt.height()));
  }
  const std::size_t inter = raster::count_and(pred, gt);
  const std::size_t uni = pred.count() + gt.count() - inter;
  if (uni == 0) return 1.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

namespace {

constexpr int kCropPad = 2;

template <class Image>
Cropped<Image> crop_impl(const Image& image, const raster::BinaryMask& gt) {
  if (image.width() != gt.width() || image.height() != gt.height()) {
    throw std::invalid_argument("crop_to_extent: image and ground truth differ in size");
  }
  const raster::PixelRect full{0, 0, gt.width(), gt.height()};
  const raster::PixelRect box = gt.bounding_box();
  if (box.empty()) return {image, gt, full, "ground truth is empty; nothing cropped"};
  const int x0 = std::max(0, box.x - kCropPad);
  const int y0 = std::max(0, box.y - kCropPad);
  const int x1 = std::min(gt.width(), box.right() + kCropPad);
  const int y1 = std::min(gt.height(), box.bottom() + kCropPad);
  const raster::PixelRect rect{x0, y0, x1 - x0, y1 - y0};
  return {image.crop(rect), gt.crop(rect), rect, std::nullopt};
}

}  // namespace

Cropped<raster::BinaryMask> crop_to_extent(const raster::BinaryMask& image, const raster::BinaryMask& gt) {
  return crop_impl(image, gt);
}

Cropped<raster::GrayImage> crop_to_extent(const raster::GrayImage& image, const raster::BinaryMask& gt) {
  return crop_impl(image, gt);
}

std::string metrics_to_json(const MetricsReport& report) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  if (report.mask_iou) doc["mask_iou"] = *report.mask_iou;
  if (report.vectorized_iou) doc["vectorized_iou"] = *report.vectorized_iou;
  if (report.wall_count) doc["wall_count"] = *report.wall_count;
  return doc.dump();
}

}  // namespace planvec::planio
