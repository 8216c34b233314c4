#include "brokeneyes/image_io.hpp"

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include <jpeglib.h>
#include <png.h>

#include "brokeneyes/error.hpp"

namespace brokeneyes {

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(std::filesystem::exists(path) ? ErrorKind::Io : ErrorKind::NotFound,
                    "cannot open " + path.string());
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw Error(ErrorKind::Io, "read failed: " + path.string());
    return bytes;
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot open for writing: " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorKind::Io, "write failed: " + path.string());
}

namespace {

RgbImage from_interleaved(std::uint32_t width, std::uint32_t height, const std::vector<std::uint8_t>& buf)
{
    std::vector<Rgb> pixels(static_cast<std::size_t>(width) * height);
    for (std::size_t i = 0; i < pixels.size(); ++i) {
        pixels[i] = {buf[3 * i], buf[3 * i + 1], buf[3 * i + 2]};
    }
    return RgbImage(width, height, std::move(pixels));
}

RgbImage decode_png(std::span<const std::uint8_t> bytes)
{
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
        throw Error(ErrorKind::Format, std::string("png: ") + image.message);
    }
    image.format = PNG_FORMAT_RGB;
    if (image.width == 0 || image.height == 0) {
        png_image_free(&image);
        throw Error(ErrorKind::Format, "png: empty image");
    }
    std::vector<std::uint8_t> buf(PNG_IMAGE_SIZE(image));
    const png_color black{0, 0, 0};
    if (!png_image_finish_read(&image, &black, buf.data(), 0, nullptr)) {
        const std::string msg = image.message;
        png_image_free(&image);
        throw Error(ErrorKind::Format, "png: " + msg);
    }
    return from_interleaved(image.width, image.height, buf);
}

struct JpegErrorManager {
    jpeg_error_mgr base;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr info)
{
    auto* mgr = reinterpret_cast<JpegErrorManager*>(info->err);
    (*info->err->format_message)(info, mgr->message);
    std::longjmp(mgr->jump, 1);
}

void jpeg_silence(j_common_ptr, int) {}

// Returns false and fills `message` on failure. No objects with destructors
// live between setjmp and the decode calls.
bool decode_jpeg_raw(std::span<const std::uint8_t> bytes, std::vector<std::uint8_t>& buf,
                     std::uint32_t& width, std::uint32_t& height, std::string& message)
{
    jpeg_decompress_struct info;
    JpegErrorManager err;
    info.err = jpeg_std_error(&err.base);
    err.base.error_exit = jpeg_error_exit;
    err.base.emit_message = jpeg_silence;
    err.message[0] = '\0';

    if (setjmp(err.jump)) {
        jpeg_destroy_decompress(&info);
        message = err.message;
        return false;
    }
    jpeg_create_decompress(&info);
    jpeg_mem_src(&info, bytes.data(), static_cast<unsigned long>(bytes.size()));
    jpeg_read_header(&info, TRUE);
    info.out_color_space = JCS_RGB;
    jpeg_start_decompress(&info);
    width = info.output_width;
    height = info.output_height;
    buf.resize(static_cast<std::size_t>(width) * height * 3);
    while (info.output_scanline < info.output_height) {
        JSAMPROW row = buf.data() + static_cast<std::size_t>(info.output_scanline) * width * 3;
        jpeg_read_scanlines(&info, &row, 1);
    }
    jpeg_finish_decompress(&info);
    jpeg_destroy_decompress(&info);
    return true;
}

RgbImage decode_jpeg(std::span<const std::uint8_t> bytes)
{
    std::vector<std::uint8_t> buf;
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::string message;
    if (!decode_jpeg_raw(bytes, buf, width, height, message)) {
        throw Error(ErrorKind::Format, "jpeg: " + message);
    }
    if (width == 0 || height == 0) throw Error(ErrorKind::Format, "jpeg: empty image");
    return from_interleaved(width, height, buf);
}

} // namespace

RgbImage decode_image(std::span<const std::uint8_t> bytes)
{
    static constexpr std::uint8_t kPng[] = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
    if (bytes.size() >= sizeof kPng && std::memcmp(bytes.data(), kPng, sizeof kPng) == 0) {
        return decode_png(bytes);
    }
    if (bytes.size() >= 3 && bytes[0] == 0xFF && bytes[1] == 0xD8 && bytes[2] == 0xFF) {
        return decode_jpeg(bytes);
    }
    throw Error(ErrorKind::Format, "not a PNG or JPEG stream");
}

RgbImage read_image(const std::filesystem::path& path)
{
    try {
        return decode_image(read_file_bytes(path));
    } catch (const Error& e) {
        throw Error(e.kind(), path.string() + ": " + e.what());
    }
}

namespace {

void png_append(png_structp png, png_bytep data, png_size_t length)
{
    auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
    out->insert(out->end(), data, data + length);
}

void png_throw(png_structp png, png_const_charp message)
{
    *static_cast<std::string*>(png_get_error_ptr(png)) = message;
    png_longjmp(png, 1);
}

void png_ignore_warning(png_structp, png_const_charp) {}

} // namespace

// Written with zlib level 1: outputs are large in number and small in size,
// and encoding dominated curate runtime at the default level.
std::vector<std::uint8_t> encode_png(const RgbImage& img)
{
    std::string message;
    std::vector<std::uint8_t> out;
    std::vector<std::uint8_t> row(static_cast<std::size_t>(img.width()) * 3);

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &message, png_throw, png_ignore_warning);
    if (!png) throw Error(ErrorKind::Io, "png encode: out of memory");
    png_infop info = png_create_info_struct(png);
    if (!info || setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, info ? &info : nullptr);
        throw Error(ErrorKind::Io, "png encode: " + (message.empty() ? std::string("out of memory") : message));
    }

    png_set_write_fn(png, &out, png_append, nullptr);
    png_set_compression_level(png, 1);
    png_set_IHDR(png, info, img.width(), img.height(), 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (std::uint32_t y = 0; y < img.height(); ++y) {
        for (std::uint32_t x = 0; x < img.width(); ++x) {
            const Rgb& p = img.at(x, y);
            row[3 * x] = p.r;
            row[3 * x + 1] = p.g;
            row[3 * x + 2] = p.b;
        }
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return out;
}

void write_png(const RgbImage& img, const std::filesystem::path& path)
{
    write_file_bytes(path, encode_png(img));
}

} // namespace brokeneyes
