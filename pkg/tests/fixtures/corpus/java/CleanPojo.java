package app.model;

class CleanPojo {
    private int width;
    private int height;

    int area() {
        return width * height;
    }
}
